#include <bellport/verify.hpp>

#include <bellport/bellmix.hpp>
#include <bellport/dense_oracle.hpp>
#include <bellport/qcore.hpp>
#include <bellport/sweep.hpp>
#include <bellport/teleport.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace bellport {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNormTol = 1e-12;
constexpr double kStateTol = 1e-10;

using Check = std::function<double()>;  // returns worst deviation; compared against a tolerance

const std::vector<double>& alpha_grid() {
    static const std::vector<double> g{0.0, 0.3, 1.0 / std::numbers::sqrt2, 0.9, 1.0};
    return g;
}

std::vector<double> steps(double lo, double step, int count) {
    std::vector<double> v;
    for (int i = 0; i < count; ++i) v.push_back(lo + step * i);
    return v;
}

CheckResult tolerance_check(std::string name, double tol, const Check& worst) {
    CheckResult r{std::move(name), false, {}};
    try {
        const double w = worst();
        r.passed = w <= tol;
        std::ostringstream os;
        os << "worst deviation " << w << " (tolerance " << tol << ")";
        r.detail = os.str();
    } catch (const std::exception& e) {
        r.detail = std::string("threw: ") + e.what();
    }
    return r;
}

double report_worst(const std::vector<double>& thetas, const std::vector<double>& ndeltas,
                    CorrectionStrategy strategy,
                    const std::function<double(const TeleportReport<double>&, double, double, double)>& f) {
    double worst = 0;
    for (double th : thetas)
        for (double nd : ndeltas)
            for (double a : alpha_grid()) {
                const auto rep = run_enumerated(InputState<double>::from_real(a), ResourceParams<double>{th, nd, {}},
                                                strategy);
                worst = std::max(worst, f(rep, th, nd, a));
            }
    return worst;
}

// Largest 3-sigma-normalized deviation of sampled frequencies from exact probabilities.
double sampling_z(const StateVector<double>& s, const Qubits& qubits, std::uint64_t seed, int shots) {
    const auto branches = measure_enumerate(s, qubits);
    std::mt19937_64 rng(seed);
    std::vector<int> counts(branches.size(), 0);
    for (int i = 0; i < shots; ++i) {
        const auto bits = sample_measurement(s, qubits, rng);
        int idx = 0;
        for (char c : bits) idx = 2 * idx + (c - '0');
        ++counts[idx];
    }
    double worst = 0;
    for (std::size_t k = 0; k < branches.size(); ++k) {
        const double p = branches[k].probability;
        const double sigma = std::sqrt(p * (1 - p) / shots);
        const double dev = std::abs(double(counts[k]) / shots - p);
        worst = std::max(worst, sigma > 0 ? dev / (3 * sigma) : (dev > 0 ? 1e9 : 0.0));
    }
    return worst;  // <= 1 means every outcome is within 3 sigma
}

} // namespace

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);

    // ---- engine ----
    out.push_back(tolerance_check("qcore: norm preservation", kNormTol, [&] {
        double worst = 0;
        for (int i = 0; i < 50; ++i) {
            const auto s = oracle::random_state<double>(3, rng);
            const int k = 1 + int(rng() % 2);
            const auto t = oracle::random_targets(3, k, rng);
            const auto r = apply_unitary(s, t, oracle::random_unitary<double>(k, rng));
            worst = std::max(worst, std::abs(r.norm() - s.norm()));
        }
        return worst;
    }));
    out.push_back(tolerance_check("qcore: brute-force Kronecker equivalence", kNormTol, [&] {
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
            const auto s = oracle::random_state<double>(3, rng);
            const int k = 1 + int(rng() % 2);
            const auto t = oracle::random_targets(3, k, rng);
            const auto u = oracle::random_unitary<double>(k, rng);
            worst = std::max(worst, max_abs_diff(apply_unitary(s, t, u), oracle::apply_dense(s, t, u)));
        }
        return worst;
    }));
    out.push_back(tolerance_check("qcore: measurement completeness", kNormTol, [&] {
        double worst = 0;
        for (int i = 0; i < 50; ++i) {
            const auto s = oracle::random_state<double>(3, rng);
            const int k = 1 + int(rng() % 3);
            const auto branches = measure_enumerate(s, oracle::random_targets(3, k, rng));
            double total = 0;
            for (const auto& b : branches) {
                total += b.probability;
                worst = std::max(worst, std::abs(b.probability - b.post_state_unnormalized.squared_norm()));
            }
            worst = std::max(worst, std::abs(total - 1));
        }
        return worst;
    }));
    out.push_back(tolerance_check("qcore: standard gates are unitary", kNormTol, [&] {
        double worst = 0;
        for (auto g : {Gate::I, Gate::H, Gate::X, Gate::Y, Gate::Z, Gate::CNOT})
            worst = std::max(worst, standard_gate<double>(g).unitarity_error());
        for (double a : steps(-kPi, kPi / 8, 17))
            worst = std::max(worst, standard_gate<double>(Gate::UY, a).unitarity_error());
        return worst;
    }));
    out.push_back(tolerance_check("qcore: sampling within 3 sigma", 1.0, [&] {
        const auto s = oracle::random_state<double>(3, rng);
        return sampling_z(s, {0, 2}, seed ^ 0x5eedULL, 100000);
    }));

    // ---- resource states ----
    const auto theta16 = steps(0, kPi / 32, 17);
    const auto nd26 = steps(0, 0.01, 26);
    out.push_back(tolerance_check("bellmix: distorted resource is normalized", kNormTol, [&] {
        double worst = 0;
        for (double th : theta16)
            for (double nd : nd26) worst = std::max(worst, std::abs(resource_distorted(th, nd).norm() - 1));
        return worst;
    }));
    out.push_back(tolerance_check("bellmix: zero distortion reduces to ideal", kNormTol, [&] {
        double worst = 0;
        for (double th : steps(-kPi, kPi / 16, 33))
            worst = std::max(worst, max_abs_diff(resource_distorted(th, 0.0), resource_ideal(th)));
        return worst;
    }));
    out.push_back(tolerance_check("bellmix: beta00 weight is sin^2(2 pi nd) cos^2 theta", kNormTol, [&] {
        double worst = 0;
        const auto b00 = bell_state<double>(0, 0);
        for (double th : theta16)
            for (double nd : nd26) {
                const double w = std::norm(inner_product(b00, resource_distorted(th, nd)));
                const double expect = std::pow(std::sin(2 * kPi * nd) * std::cos(th), 2);
                worst = std::max(worst, std::abs(w - expect));
            }
        return worst;
    }));
    out.push_back(tolerance_check("bellmix: delta antisymmetric under Q -> 2j - Q", kNormTol, [&] {
        double worst = 0;
        std::uniform_real_distribution<double> u(-3, 3);
        for (int i = 0; i < 50; ++i) {
            const double J = u(rng), b1 = u(rng), b2 = u(rng), q = u(rng) / 6;
            const double j = coupling_ratio(J, b1, b2);
            worst = std::max(worst, std::abs(delta_from_physical(J, b1, b2, q) + delta_from_physical(J, b1, b2, 2 * j - q)));
        }
        return worst;
    }));

    // ---- protocol ----
    const auto theta17 = steps(0, kPi / 32, 17);
    const std::vector<double> nd6{0, 0.05, 0.10, 0.15, 0.20, 0.25};
    out.push_back(tolerance_check("teleport: branch probabilities are 1/4 at nd = 0", kNormTol, [&] {
        return report_worst(theta17, {0.0}, CorrectionStrategy::PauliOnly, [](const auto& rep, double, double, double) {
            double w = 0;
            for (const auto& o : rep.outcomes) w = std::max(w, std::abs(o.probability - 0.25));
            return w;
        });
    }));
    out.push_back(tolerance_check("teleport: total probability is 1", kNormTol, [&] {
        return report_worst(theta17, nd6, CorrectionStrategy::PauliPlusRotation, [](const auto& rep, double, double, double) {
            double total = 0;
            for (const auto& o : rep.outcomes) total += o.probability;
            return std::abs(total - 1);
        });
    }));
    out.push_back(tolerance_check("teleport: no correction gives F = 1/2 at nd = 0", kStateTol, [&] {
        return report_worst(theta17, {0.0}, CorrectionStrategy::NoCorrection,
                            [](const auto& rep, double, double, double) { return std::abs(rep.avg_fidelity_sq - 0.5); });
    }));
    out.push_back(tolerance_check("teleport: rotation gives F = 1 at theta in {0, pi/2}, nd = 0", kStateTol, [&] {
        return report_worst({0.0, kPi / 2}, {0.0}, CorrectionStrategy::PauliPlusRotation,
                            [](const auto& rep, double, double, double) { return std::abs(rep.avg_fidelity_sq - 1); });
    }));
    out.push_back(tolerance_check("teleport: rotation gives F = 1 at theta = pi/2 for all nd", kStateTol, [&] {
        return report_worst({kPi / 2}, nd6, CorrectionStrategy::PauliPlusRotation,
                            [](const auto& rep, double, double, double) { return std::abs(rep.avg_fidelity_sq - 1); });
    }));
    out.push_back(tolerance_check("teleport: Pauli-only gives F = 0 at theta = pi/2", kStateTol, [&] {
        return report_worst({kPi / 2}, nd6, CorrectionStrategy::PauliOnly,
                            [](const auto& rep, double, double, double) { return std::abs(rep.avg_fidelity_sq); });
    }));
    out.push_back(tolerance_check("teleport: theta = 0 degradation 1 - 4 a^2 b^2 sin^2(2 pi nd)", kStateTol, [&] {
        return report_worst({0.0}, nd26, CorrectionStrategy::PauliPlusRotation, [](const auto& rep, double, double nd, double a) {
            const double b2 = 1 - a * a;
            const double expect = 1 - 4 * a * a * b2 * std::pow(std::sin(2 * kPi * nd), 2);
            return std::abs(rep.avg_fidelity_sq - expect);
        });
    }));
    out.push_back(tolerance_check("teleport: circuit matches closed-form branch states", kStateTol, [&] {
        double worst = 0;
        for (double th : theta17)
            for (double nd : nd6)
                for (double a : alpha_grid())
                    worst = std::max(worst, cross_check_table1(th, nd, InputState<double>::from_real(a)));
        return worst;
    }));
    out.push_back(tolerance_check("teleport: amplitude fidelity squared equals squared fidelity", kNormTol, [&] {
        return report_worst(theta17, nd6, CorrectionStrategy::PauliPlusRotation, [](const auto& rep, double, double, double) {
            double w = 0;
            for (const auto& o : rep.outcomes) w = std::max(w, std::abs(o.fidelity_amp * o.fidelity_amp - o.fidelity_sq));
            return w;
        });
    }));
    out.push_back(tolerance_check("teleport: sampled frequencies within 3 sigma", 1.0, [&] {
        const auto input = InputState<double>::from_real(0.6);
        const ResourceParams<double> params{kPi / 4, 0.1, {}};
        const auto rep = run_enumerated(input, params, CorrectionStrategy::PauliPlusRotation);
        const int shots = 100000;
        const auto run = run_sampled(input, params, CorrectionStrategy::PauliPlusRotation, shots, seed);
        double worst = 0;
        for (int k = 0; k < 4; ++k) {
            const double p = rep.outcomes[k].probability;
            const double sigma = std::sqrt(p * (1 - p) / shots);
            worst = std::max(worst, std::abs(run.frequency(k) - p) / (3 * sigma));
        }
        return worst;
    }));
    out.push_back(tolerance_check("teleport: fixed seed reproduces sampled run", 0.0, [&] {
        const auto input = InputState<double>::from_real(0.8);
        const ResourceParams<double> params{kPi / 3, 0.07, {}};
        const auto r1 = run_sampled(input, params, CorrectionStrategy::PauliPlusRotation, 2000, seed);
        const auto r2 = run_sampled(input, params, CorrectionStrategy::PauliPlusRotation, 2000, seed);
        return (r1.sequence == r2.sequence && r1.counts == r2.counts) ? 0.0 : 1.0;
    }));

    // ---- sweep ----
    SweepGrid small = figure2_preset('c');
    small.theta_points = 9;
    small.alpha_points = 9;
    out.push_back(tolerance_check("sweep: identical grids give identical CSV", 0.0, [&] {
        std::ostringstream a, b;
        write_csv(run_sweep(small), a);
        write_csv(run_sweep(small), b);
        return a.str() == b.str() ? 0.0 : 1.0;
    }));
    out.push_back(tolerance_check("sweep: fidelity non-increasing in nd at theta = 0", kNormTol, [&] {
        SweepGrid g = small;
        g.theta_max = 0.25;  // theta = 0 is the first slice
        g.ndelta_values = nd26;
        const auto rows = run_sweep(g);
        double worst = 0;
        const std::size_t per = std::size_t(g.theta_points) * g.alpha_points;
        for (std::size_t k = 1; k < g.ndelta_values.size(); ++k)
            for (int ai = 0; ai < g.alpha_points; ++ai) {
                const double prev = rows[(k - 1) * per + ai].fidelity;
                const double cur = rows[k * per + ai].fidelity;
                worst = std::max(worst, cur - prev);
            }
        return worst;
    }));
    out.push_back(tolerance_check("sweep: nd = 0 surface dominates at theta in {0, pi/2}", kNormTol, [&] {
        const auto rows = run_sweep(small);
        const std::size_t per = std::size_t(small.theta_points) * small.alpha_points;
        double worst = 0;
        for (std::size_t i = per; i < rows.size(); ++i) {
            const auto& r = rows[i];
            if (r.theta != 0.0 && r.theta != small.theta_max) continue;
            worst = std::max(worst, r.fidelity - rows[i % per].fidelity);
        }
        return worst;
    }));
    out.push_back(tolerance_check("sweep: rows equal direct protocol runs", 0.0, [&] {
        const auto rows = run_sweep(small);
        double worst = 0;
        for (std::size_t i = 0; i < rows.size(); i += 7) {
            const auto& r = rows[i];
            const auto rep = run_enumerated(InputState<double>::from_real(r.alpha), ResourceParams<double>{r.theta, r.ndelta, {}},
                                            small.strategy, small.convention);
            worst = std::max(worst, std::abs(rep.average_fidelity() - r.fidelity));
        }
        return worst;
    }));
    out.push_back(tolerance_check("sweep: row probabilities sum to 1", kStateTol, [&] {
        double worst = 0;
        for (const auto& r : run_sweep(small)) worst = std::max(worst, std::abs(r.p00 + r.p01 + r.p10 + r.p11 - 1));
        return worst;
    }));
    return out;
}

} // namespace bellport
