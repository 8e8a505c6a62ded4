#pragma once

// One-qubit teleportation over the two-species resource.
//
// Qubit layout: q0 carries the input |psi'> (Alice), q1 is Alice's half of the
// pair, q2 is Bob's half. Alice applies CNOT(q0 -> q1) then H(q0) and measures
// (q0, q1) = (M1, M2). Bob's correction depends on the strategy:
//   NoCorrection       nothing
//   PauliOnly          X^{M2} Z^{M1+1}  (Z power first)
//   PauliPlusRotation  the Pauli frame, then H U_Y(theta) H

#include <bellport/bellmix.hpp>
#include <bellport/errors.hpp>
#include <bellport/qcore.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace bellport {

enum class CorrectionStrategy { NoCorrection, PauliOnly, PauliPlusRotation };

enum class FidelityConvention {
    SquaredOverlap,   // |<psi'|psi>|^2
    AmplitudeOverlap  // |<psi'|psi>|
};

inline std::string_view to_string(CorrectionStrategy s) {
    switch (s) {
    case CorrectionStrategy::NoCorrection: return "none";
    case CorrectionStrategy::PauliOnly: return "pauli";
    case CorrectionStrategy::PauliPlusRotation: return "pauli+rot";
    }
    return "?";
}

inline std::string_view to_string(FidelityConvention c) {
    return c == FidelityConvention::SquaredOverlap ? "sq" : "amp";
}

inline CorrectionStrategy parse_strategy(std::string_view tag) {
    if (tag == "none") return CorrectionStrategy::NoCorrection;
    if (tag == "pauli") return CorrectionStrategy::PauliOnly;
    if (tag == "pauli+rot") return CorrectionStrategy::PauliPlusRotation;
    throw ArgumentError("unknown correction strategy: " + std::string(tag));
}

inline FidelityConvention parse_convention(std::string_view tag) {
    if (tag == "sq") return FidelityConvention::SquaredOverlap;
    if (tag == "amp") return FidelityConvention::AmplitudeOverlap;
    throw ArgumentError("unknown fidelity convention: " + std::string(tag));
}

/// alpha |0> + beta |1>, normalized.
template <class Scalar = double>
class InputState {
public:
    InputState(Complex<Scalar> alpha, Complex<Scalar> beta) : alpha_(alpha), beta_(beta) {
        const Scalar n2 = std::norm(alpha) + std::norm(beta);
        if (!std::isfinite(n2) || std::abs(n2 - Scalar(1)) > Tolerance<Scalar>::norm()) {
            throw ArgumentError("InputState: |alpha|^2 + |beta|^2 must equal 1");
        }
    }

    /// alpha real, beta = sqrt(1 - alpha^2) e^{i beta_phase}.
    static InputState from_real(Scalar alpha, Scalar beta_phase = Scalar(0)) {
        if (!std::isfinite(alpha) || std::abs(alpha) > Scalar(1)) {
            throw ArgumentError("InputState: real alpha must satisfy |alpha| <= 1");
        }
        const Scalar b = std::sqrt(std::max(Scalar(0), Scalar(1) - alpha * alpha));
        return InputState(Complex<Scalar>(alpha), std::polar(b, beta_phase));
    }

    Complex<Scalar> alpha() const noexcept { return alpha_; }
    Complex<Scalar> beta() const noexcept { return beta_; }

    StateVector<Scalar> state() const {
        AmpVector<Scalar> v(2);
        v << alpha_, beta_;
        return StateVector<Scalar>(1, std::move(v));
    }

private:
    Complex<Scalar> alpha_;
    Complex<Scalar> beta_;
};

template <class Scalar = double>
struct TeleportOutcome {
    int m1 = 0;
    int m2 = 0;
    Scalar probability{};
    StateVector<Scalar> corrected_unnormalized;     // Bob's qubit after correction, norm^2 = probability
    std::optional<StateVector<Scalar>> teleported;  // normalized; empty for negligible branches
    Scalar fidelity_sq{};
    Scalar fidelity_amp{};
};

template <class Scalar = double>
struct TeleportReport {
    std::vector<TeleportOutcome<Scalar>> outcomes;  // 00, 01, 10, 11
    Scalar avg_fidelity_sq{};
    Scalar avg_fidelity_amp{};
    FidelityConvention convention = FidelityConvention::SquaredOverlap;

    Scalar average_fidelity() const { return average_fidelity(convention); }
    Scalar average_fidelity(FidelityConvention c) const {
        return c == FidelityConvention::SquaredOverlap ? avg_fidelity_sq : avg_fidelity_amp;
    }
};

/// |psi'> (x) resource, q0 = input carrier.
template <class Scalar>
StateVector<Scalar> build_protocol_state(const InputState<Scalar>& input,
                                         const StateVector<Scalar>& resource) {
    if (resource.num_qubits() != 2) {
        throw ArgumentError("build_protocol_state: resource must be a 2-qubit state");
    }
    return tensor(input.state(), resource);
}

/// (H (x) I (x) I) CNOT_{0->1}
template <class Scalar>
StateVector<Scalar> alice_transform(const StateVector<Scalar>& s) {
    if (s.num_qubits() != 3) throw ArgumentError("alice_transform: expected a 3-qubit state");
    const auto entangled = apply_unitary(s, {0, 1}, standard_gate<Scalar>(Gate::CNOT));
    return apply_unitary(entangled, {0}, standard_gate<Scalar>(Gate::H));
}

/// H U_Y(theta) H as the composed three-gate product.
template <class Scalar>
Unitary<Scalar> species_rotation(Scalar theta) {
    const auto h = standard_gate<Scalar>(Gate::H);
    return h * standard_gate<Scalar>(Gate::UY, theta) * h;
}

template <class Scalar>
StateVector<Scalar> apply_correction(const StateVector<Scalar>& branch_state, int m1, int m2,
                                     CorrectionStrategy strategy, Scalar theta) {
    if (branch_state.num_qubits() != 1) {
        throw ArgumentError("apply_correction: branch state must be a single qubit");
    }
    if ((m1 != 0 && m1 != 1) || (m2 != 0 && m2 != 1)) {
        throw ArgumentError("apply_correction: measurement bits must be 0 or 1");
    }
    if (strategy == CorrectionStrategy::NoCorrection) return branch_state;

    StateVector<Scalar> out = branch_state;
    if ((m1 + 1) % 2 == 1) out = apply_unitary(out, {0}, standard_gate<Scalar>(Gate::Z));
    if (m2 == 1) out = apply_unitary(out, {0}, standard_gate<Scalar>(Gate::X));
    if (strategy == CorrectionStrategy::PauliPlusRotation) {
        out = apply_unitary(out, {0}, species_rotation(theta));
    }
    return out;
}

namespace detail {

template <class Scalar>
TeleportOutcome<Scalar> make_outcome(const InputState<Scalar>& input, int m1, int m2,
                                     StateVector<Scalar> corrected) {
    TeleportOutcome<Scalar> o{m1, m2, corrected.squared_norm(), corrected, std::nullopt, {}, {}};
    if (o.probability >= Tolerance<Scalar>::negligible_probability()) {
        o.teleported = corrected.normalized();
        const Scalar overlap = std::min(Scalar(1), std::abs(inner_product(input.state(), *o.teleported)));
        o.fidelity_amp = overlap;
        o.fidelity_sq = overlap * overlap;
    }
    return o;
}

template <class Scalar>
std::vector<MeasurementBranch<Scalar>> alice_branches(const InputState<Scalar>& input,
                                                      const ResourceParams<Scalar>& params) {
    const auto joint = alice_transform(build_protocol_state(input, resource_state(params)));
    return measure_enumerate(joint, {0, 1});
}

} // namespace detail

/// Full protocol with every measurement branch enumerated exactly.
template <class Scalar>
TeleportReport<Scalar> run_enumerated(const InputState<Scalar>& input,
                                      const ResourceParams<Scalar>& params,
                                      CorrectionStrategy strategy,
                                      FidelityConvention convention = FidelityConvention::SquaredOverlap) {
    TeleportReport<Scalar> report;
    report.convention = convention;
    for (const auto& branch : detail::alice_branches(input, params)) {
        const int m1 = branch.outcome[0] - '0';
        const int m2 = branch.outcome[1] - '0';
        auto corrected = apply_correction(branch.post_state_unnormalized, m1, m2, strategy, params.theta);
        auto outcome = detail::make_outcome(input, m1, m2, std::move(corrected));
        report.avg_fidelity_sq += outcome.probability * outcome.fidelity_sq;
        report.avg_fidelity_amp += outcome.probability * outcome.fidelity_amp;
        report.outcomes.push_back(std::move(outcome));
    }
    return report;
}

template <class Scalar = double>
struct SampledRun {
    std::uint64_t shots = 0;
    std::array<std::uint64_t, 4> counts{};  // indexed by 2*M1 + M2
    std::vector<std::uint8_t> sequence;     // outcome index per shot, in draw order
    std::array<std::optional<StateVector<Scalar>>, 4> teleported;  // filled for observed outcomes

    double frequency(int outcome_index) const {
        return double(counts.at(outcome_index)) / double(shots);
    }
};

/// Shot-by-shot protocol with sampled measurements. Deterministic for a fixed seed.
template <class Scalar>
SampledRun<Scalar> run_sampled(const InputState<Scalar>& input, const ResourceParams<Scalar>& params,
                               CorrectionStrategy strategy, std::uint64_t shots, std::uint64_t rng_seed) {
    if (shots == 0) throw ArgumentError("run_sampled: shots must be at least 1");
    const auto joint = alice_transform(build_protocol_state(input, resource_state(params)));
    const auto branches = measure_enumerate(joint, {0, 1});

    std::mt19937_64 rng(rng_seed);
    SampledRun<Scalar> run;
    run.shots = shots;
    run.sequence.reserve(shots);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        const std::string bits = sample_measurement(joint, {0, 1}, rng);
        const int idx = 2 * (bits[0] - '0') + (bits[1] - '0');
        ++run.counts[idx];
        run.sequence.push_back(static_cast<std::uint8_t>(idx));
        if (!run.teleported[idx]) {
            const auto& collapsed = branches[idx].post_state_normalized;
            if (collapsed) {
                run.teleported[idx] =
                    apply_correction(*collapsed, idx >> 1, idx & 1, strategy, params.theta).normalized();
            }
        }
    }
    return run;
}

/// Closed-form corrected state of one measurement branch, unnormalized (carries the +-1/2
/// prefactor). corrected = false gives the Pauli-only state, true the Pauli + rotation state.
template <class Scalar>
StateVector<Scalar> table1_reference(int m1, int m2, Scalar theta, Scalar ndelta,
                                     const InputState<Scalar>& input, bool corrected) {
    using C = Complex<Scalar>;
    if ((m1 != 0 && m1 != 1) || (m2 != 0 && m2 != 1)) {
        throw ArgumentError("table1_reference: measurement bits must be 0 or 1");
    }
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const C a = input.alpha();
    const C b = input.beta();
    const C i(0, 1);
    const Scalar phi = Scalar(2) * pi * ndelta;
    const C e2 = std::polar(Scalar(1), phi);
    const C e4 = std::polar(Scalar(1), Scalar(2) * phi);
    const Scalar c = std::cos(theta), s = std::sin(theta);
    const Scalar c2 = c * c, s2 = s * s;
    const Scalar sin2t = std::sin(Scalar(2) * theta), cos2t = std::cos(Scalar(2) * theta);
    const Scalar cphi = std::cos(phi), sphi = std::sin(phi);
    const Scalar half(0.5);

    C zero, one;
    switch (2 * m1 + m2) {
    case 0:
        if (!corrected) {
            zero = -half * (a * c - b * s);
            one = -half * (b * e4 * c + a * s);
        } else {
            zero = -half * (a + i * b * e2 * sphi * sin2t);
            one = -half * b * (e4 * c2 + s2);
        }
        break;
    case 1:
        if (!corrected) {
            zero = -half * (a * e4 * c + b * s);
            one = -half * (b * c - a * s);
        } else {
            zero = -half * (a * (e4 * c2 - s2) + b * sin2t);
            one = -half * (b * cos2t - a * e2 * cphi * sin2t);
        }
        break;
    case 2:
        if (!corrected) {
            zero = -half * (a * c + b * s);
            one = -half * (b * e4 * c - a * s);
        } else {
            zero = -half * (a * cos2t + b * e2 * cphi * sin2t);
            one = -half * (b * (e4 * c2 - s2) - a * sin2t);
        }
        break;
    default:
        if (!corrected) {
            zero = half * (a * e4 * c - b * s);
            one = half * (b * c + a * s);
        } else {
            zero = half * a * (e4 * c2 + s2);
            one = half * (b - i * a * e2 * sphi * sin2t);
        }
        break;
    }
    AmpVector<Scalar> v(2);
    v << zero, one;
    return StateVector<Scalar>(1, std::move(v));
}

/// Max elementwise deviation between simulated corrected branches and the closed
/// forms, over both correction levels and all four outcomes.
template <class Scalar>
Scalar cross_check_table1(Scalar theta, Scalar ndelta, const InputState<Scalar>& input) {
    const ResourceParams<Scalar> params{theta, ndelta, std::nullopt};
    const auto branches = detail::alice_branches(input, params);
    Scalar worst(0);
    for (const auto strategy : {CorrectionStrategy::PauliOnly, CorrectionStrategy::PauliPlusRotation}) {
        const bool rotated = strategy == CorrectionStrategy::PauliPlusRotation;
        for (const auto& branch : branches) {
            const int m1 = branch.outcome[0] - '0';
            const int m2 = branch.outcome[1] - '0';
            const auto simulated = apply_correction(branch.post_state_unnormalized, m1, m2, strategy, theta);
            const auto closed_form = table1_reference(m1, m2, theta, ndelta, input, rotated);
            worst = std::max(worst, max_abs_diff(simulated, closed_form));
        }
    }
    return worst;
}

} // namespace bellport
