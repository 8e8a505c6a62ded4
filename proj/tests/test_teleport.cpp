#include "helpers.hpp"

#include <bellport/bellmix.hpp>
#include <bellport/teleport.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace bellport;
using namespace test_helpers;

namespace {

const double r2 = 1.0 / std::numbers::sqrt2;
const double pi = std::numbers::pi;
const double alphas[] = {0.0, 0.3, 1.0 / std::numbers::sqrt2, 0.9, 1.0};

TeleportReport<double> run(double alpha, double theta, double nd, CorrectionStrategy s) {
    return run_enumerated(InputState<double>::from_real(alpha), ResourceParams<double>{theta, nd, std::nullopt}, s);
}

} // namespace

TEST_CASE("InputState validation") {
    CHECK_NOTHROW(InputState<double>(C(0.6), C(0, 0.8)));
    CHECK_THROWS_AS(InputState<double>(C(0.6), C(0.6)), ArgumentError);
    CHECK_THROWS_AS(InputState<double>::from_real(1.5), ArgumentError);
    const auto in = InputState<double>::from_real(0.6, pi / 2);
    check_complex(in.beta(), C(0, 0.8));
}

TEST_CASE("build_protocol_state expansions") {
    check_state(build_protocol_state(InputState<double>::from_real(1.0), bell_state(1, 0)),
                state_of({r2, 0, 0, -r2, 0, 0, 0, 0}));
    check_state(build_protocol_state(InputState<double>::from_real(0.0), bell_state(0, 1)),
                state_of({0, 0, 0, 0, 0, r2, r2, 0}));

    const InputState<double> in(C(0.6), C(0, 0.8));
    const C a = in.alpha(), b = in.beta();
    check_state(build_protocol_state(in, -bell_state(1, 0)),
                state_of({-a * r2, 0, 0, a * r2, -b * r2, 0, 0, b * r2}));

    CHECK_THROWS_AS(build_protocol_state(in, make_state(1, 0)), ArgumentError);
}

TEST_CASE("alice_transform") {
    check_state(alice_transform(make_state(3, 0)), state_of({r2, 0, 0, 0, r2, 0, 0, 0}));
    check_state(alice_transform(make_state(3, 4)), state_of({0, 0, r2, 0, 0, 0, -r2, 0}));
    CHECK_THROWS_AS(alice_transform(make_state(2, 0)), ArgumentError);

    // Hand expansion of CNOT then H on -alpha/sqrt2 (|000>-|011>) - beta/sqrt2 (|100>-|111>):
    // the q0 q1 = 00 block is -1/2 (alpha |0> - beta |1>).
    const InputState<double> in(C(0.6), C(0, 0.8));
    const auto s = alice_transform(build_protocol_state(in, resource_ideal(0.0)));
    check_complex(s[0], -0.5 * in.alpha());
    check_complex(s[1], 0.5 * in.beta());
}

TEST_CASE("apply_correction") {
    const InputState<double> in(C(0.6), C(0, 0.8));
    const C a = in.alpha(), b = in.beta();

    // Pauli frame for 00 is Z: -1/2 (a|0> - b|1>) -> -1/2 (a|0> + b|1>)
    const auto branch00 = state_of({-0.5 * a, 0.5 * b});
    check_state(apply_correction(branch00, 0, 0, CorrectionStrategy::PauliOnly, 0.0), state_of({-0.5 * a, -0.5 * b}));

    check_state(apply_correction(branch00, 1, 1, CorrectionStrategy::NoCorrection, 0.7), branch00);

    // theta = pi/2, raw 00 branch is 1/2 (b|0> + a|1>). Z gives 1/2 (b|0> - a|1>), which is the
    // Pauli-only closed form; the rotation (i Y at theta = pi/2) then restores -1/2 (a|0> + b|1>).
    const auto raw = state_of({0.5 * b, 0.5 * a});
    check_state(apply_correction(raw, 0, 0, CorrectionStrategy::PauliOnly, pi / 2), state_of({0.5 * b, -0.5 * a}));
    check_state(apply_correction(raw, 0, 0, CorrectionStrategy::PauliPlusRotation, pi / 2),
                state_of({-0.5 * a, -0.5 * b}));

    // X^{M2} Z^{M1+1}: Z acts first, so for M1 = 0, M2 = 1 the result is X Z.
    const auto v = state_of({0.6, 0.8});
    check_state(apply_correction(v, 0, 1, CorrectionStrategy::PauliOnly, 0.0), state_of({-0.8, 0.6}));
    check_state(apply_correction(v, 1, 1, CorrectionStrategy::PauliOnly, 0.0), state_of({0.8, 0.6}));
    check_state(apply_correction(v, 1, 0, CorrectionStrategy::PauliOnly, 0.0), v);

    for (int m = 0; m < 4; ++m)
        CHECK(std::abs(apply_correction(v, m >> 1, m & 1, CorrectionStrategy::PauliPlusRotation, 0.9).norm() - 1) <= 1e-12);

    CHECK_THROWS_AS(apply_correction(make_state(2, 0), 0, 0, CorrectionStrategy::PauliOnly, 0.0), ArgumentError);
}

TEST_CASE("run_enumerated reference regimes") {
    SUBCASE("rotation, theta = 0, no distortion") {
        for (double a : {0.0, 0.3, 0.6, 1.0}) {
            const auto rep = run(a, 0.0, 0.0, CorrectionStrategy::PauliPlusRotation);
            CHECK(std::abs(rep.avg_fidelity_sq - 1) <= 1e-10);
            for (const auto& o : rep.outcomes) CHECK(std::abs(o.probability - 0.25) <= 1e-12);
        }
    }
    SUBCASE("rotation, theta = pi/2, strong distortion") {
        CHECK(std::abs(run(0.3, pi / 2, 0.25, CorrectionStrategy::PauliPlusRotation).avg_fidelity_sq - 1) <= 1e-10);
    }
    SUBCASE("Pauli only, theta = pi/2") {
        for (double a : alphas) CHECK(std::abs(run(a, pi / 2, 0.0, CorrectionStrategy::PauliOnly).avg_fidelity_sq) <= 1e-10);
    }
    SUBCASE("no correction") {
        CHECK(std::abs(run(r2, 0.0, 0.0, CorrectionStrategy::NoCorrection).avg_fidelity_sq - 0.5) <= 1e-10);
    }
    SUBCASE("rotation, theta = 0, nd = 0.05") {
        const auto rep = run(r2, 0.0, 0.05, CorrectionStrategy::PauliPlusRotation);
        // cos^2(0.1 pi) and cos(0.1 pi)
        CHECK(rep.avg_fidelity_sq == doctest::Approx(0.9045084971874736).epsilon(1e-12));
        CHECK(rep.avg_fidelity_amp == doctest::Approx(0.9510565162951535).epsilon(1e-12));
        CHECK(rep.average_fidelity(FidelityConvention::AmplitudeOverlap) == rep.avg_fidelity_amp);
    }
}

TEST_CASE("run_enumerated report structure") {
    const InputState<double> in(C(0.6), C(0, 0.8));
    const ResourceParams<double> params{0.7, 0.13, std::nullopt};
    const auto rep = run_enumerated(in, params, CorrectionStrategy::PauliPlusRotation, FidelityConvention::AmplitudeOverlap);
    REQUIRE(rep.outcomes.size() == 4);
    double total = 0, avg_sq = 0, avg_amp = 0, via_unnormalized = 0;
    for (int k = 0; k < 4; ++k) {
        const auto& o = rep.outcomes[k];
        CHECK(o.m1 == (k >> 1));
        CHECK(o.m2 == (k & 1));
        total += o.probability;
        avg_sq += o.probability * o.fidelity_sq;
        avg_amp += o.probability * o.fidelity_amp;
        via_unnormalized += std::norm(inner_product(in.state(), o.corrected_unnormalized));
        CHECK(std::abs(o.fidelity_amp * o.fidelity_amp - o.fidelity_sq) <= 1e-12);
        CHECK(o.teleported->is_normalized());
    }
    CHECK(std::abs(total - 1) <= 1e-12);
    CHECK(std::abs(avg_sq - rep.avg_fidelity_sq) <= 1e-12);
    CHECK(std::abs(avg_amp - rep.avg_fidelity_amp) <= 1e-12);
    CHECK(std::abs(via_unnormalized - rep.avg_fidelity_sq) <= 1e-12);
    CHECK(rep.average_fidelity() == rep.avg_fidelity_amp);
}

TEST_CASE("branch probabilities are 1/4 without distortion for every theta") {
    for (int i = 0; i <= 16; ++i)
        for (double a : alphas) {
            const auto rep = run(a, i * pi / 32, 0.0, CorrectionStrategy::PauliOnly);
            for (const auto& o : rep.outcomes) CHECK(std::abs(o.probability - 0.25) <= 1e-12);
        }
}

TEST_CASE("fidelity regimes over grids") {
    for (int i = 0; i <= 16; ++i)
        for (double a : alphas) {
            const double th = i * pi / 32;
            CHECK(std::abs(run(a, th, 0.0, CorrectionStrategy::NoCorrection).avg_fidelity_sq - 0.5) <= 1e-10);
        }
    for (int k = 0; k <= 5; ++k)
        for (double a : alphas) {
            const double nd = 0.05 * k;
            CHECK(std::abs(run(a, pi / 2, nd, CorrectionStrategy::PauliPlusRotation).avg_fidelity_sq - 1) <= 1e-10);
            CHECK(std::abs(run(a, pi / 2, nd, CorrectionStrategy::PauliOnly).avg_fidelity_sq) <= 1e-10);
            const double b2 = 1 - a * a;
            const double expect = 1 - 4 * a * a * b2 * std::pow(std::sin(2 * pi * nd), 2);
            CHECK(std::abs(run(a, 0.0, nd, CorrectionStrategy::PauliPlusRotation).avg_fidelity_sq - expect) <= 1e-10);
        }
}

TEST_CASE("table1_reference closed forms") {
    const InputState<double> in(C(0.6), C(0, 0.8));
    const C a = in.alpha(), b = in.beta();
    check_state(table1_reference(0, 0, 0.0, 0.0, in, false), state_of({-0.5 * a, -0.5 * b}));
    check_state(table1_reference(1, 1, pi / 2, 0.2, in, true), state_of({0.5 * a, 0.5 * b}));

    // |01> row with rotation at theta = pi/4, nd = 0.1, alpha = 1, beta = 0:
    //   zero = -1/2 (e^{0.4 i pi}/2 - 1/2), one = -1/2 (0 - e^{0.2 i pi} cos(0.2 pi))
    const auto one = InputState<double>::from_real(1.0);
    const C e04 = std::polar(1.0, 0.4 * pi), e02 = std::polar(1.0, 0.2 * pi);
    check_state(table1_reference(0, 1, pi / 4, 0.1, one, true),
                state_of({-0.5 * (0.5 * e04 - 0.5), 0.5 * e02 * std::cos(0.2 * pi)}));

    CHECK_THROWS_AS(table1_reference(2, 0, 0.0, 0.0, in, true), ArgumentError);
}

TEST_CASE("cross_check_table1 binds simulation to closed forms") {
    CHECK(cross_check_table1(0.0, 0.0, InputState<double>::from_real(0.4)) <= 1e-10);
    CHECK(cross_check_table1(pi / 2, 0.25, InputState<double>::from_real(0.4)) <= 1e-10);
    CHECK(cross_check_table1(pi / 3, 0.15, InputState<double>::from_real(0.6)) <= 1e-10);
    CHECK(cross_check_table1(1.234, 0.077, InputState<double>(C(0.6), C(0, 0.8))) <= 1e-10);
    for (double th : {0.0, pi / 8, pi / 4, 3 * pi / 8, pi / 2})
        for (double nd : {0.0, 0.05, 0.15, 0.25})
            for (double a : alphas) CHECK(cross_check_table1(th, nd, InputState<double>::from_real(a)) <= 1e-10);
}

TEST_CASE("a sign-flipped Bell species breaks the closed-form agreement") {
    // Same circuit, but the beta10 component enters with the wrong sign.
    const double th = 0.4, nd = 0.0;
    const auto in = InputState<double>::from_real(0.6);
    const auto wrong = std::sin(th) * bell_state(0, 1) + std::cos(th) * bell_state(1, 0);
    const auto branches = measure_enumerate(alice_transform(build_protocol_state(in, wrong)), {0, 1});
    double worst = 0;
    for (int k = 0; k < 4; ++k) {
        const auto sim = apply_correction(branches[k].post_state_unnormalized, k >> 1, k & 1,
                                          CorrectionStrategy::PauliOnly, th);
        worst = std::max(worst, max_abs_diff(sim, table1_reference(k >> 1, k & 1, th, nd, in, false)));
    }
    CHECK(worst > 0.1);
}

TEST_CASE("run_sampled") {
    const auto in = InputState<double>::from_real(0.6);
    const ResourceParams<double> ideal{0.0, 0.0, std::nullopt};

    SUBCASE("deterministic for a fixed seed") {
        const auto r1 = run_sampled(in, ideal, CorrectionStrategy::PauliPlusRotation, 4, 17);
        const auto r2 = run_sampled(in, ideal, CorrectionStrategy::PauliPlusRotation, 4, 17);
        CHECK(r1.sequence == r2.sequence);
        CHECK(r1.sequence.size() == 4);
    }
    SUBCASE("uniform outcomes at theta = 0") {
        const std::uint64_t shots = 100000;
        const auto r = run_sampled(in, ideal, CorrectionStrategy::PauliPlusRotation, shots, 5);
        const double sigma = std::sqrt(0.25 * 0.75 / shots);
        for (int k = 0; k < 4; ++k) {
            CHECK(std::abs(r.frequency(k) - 0.25) <= 3 * sigma);
            REQUIRE(r.teleported[k].has_value());
            CHECK(std::abs(std::abs(inner_product(in.state(), *r.teleported[k])) - 1) <= 1e-10);
        }
    }
    SUBCASE("matches enumerated probabilities under distortion") {
        const ResourceParams<double> p{pi / 2, 0.1, std::nullopt};
        const std::uint64_t shots = 100000;
        const auto r = run_sampled(in, p, CorrectionStrategy::PauliPlusRotation, shots, 6);
        const auto rep = run_enumerated(in, p, CorrectionStrategy::PauliPlusRotation);
        for (int k = 0; k < 4; ++k) {
            const double pk = rep.outcomes[k].probability;
            CHECK(std::abs(r.frequency(k) - pk) <= 3 * std::sqrt(pk * (1 - pk) / shots));
        }
    }
    CHECK_THROWS_AS(run_sampled(in, ideal, CorrectionStrategy::PauliOnly, 0, 1), ArgumentError);
}
