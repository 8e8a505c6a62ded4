#pragma once

// Dense state-vector engine for a handful of qubits.
//
// Basis ordering is big-endian: qubit 0 is the leftmost ket symbol, so basis
// index b = sum_k q_k * 2^(n-1-k). Everything is templated on the real scalar
// type; `double` is what the rest of the project instantiates.

#include <bellport/errors.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace bellport {

template <class Scalar>
using Complex = std::complex<Scalar>;

template <class Scalar>
using AmpVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

template <class Scalar>
using GateMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using Qubits = std::vector<int>;

/// Tolerances shared across modules. For `double` these are the fixed
/// thresholds the project tests against; narrower types scale with epsilon.
template <class Scalar>
struct Tolerance {
    static Scalar scaled(Scalar base) {
        return std::max(base, Scalar(256) * std::numeric_limits<Scalar>::epsilon());
    }
    static Scalar norm() { return scaled(Scalar(1e-12)); }
    static Scalar unitarity() { return scaled(Scalar(1e-12)); }
    static Scalar state() { return scaled(Scalar(1e-10)); }
    static Scalar measurement_input() { return scaled(Scalar(1e-9)); }
    static Scalar negligible_probability() { return scaled(Scalar(1e-14)); }
};

template <class Scalar = double>
class StateVector {
public:
    using Amp = Complex<Scalar>;
    using Vector = AmpVector<Scalar>;

    /// `num_qubits` may be 0 only for the scalar left over after measuring every qubit.
    StateVector(int num_qubits, Vector amps) : num_qubits_(num_qubits), amps_(std::move(amps)) {
        if (num_qubits_ < 0 || num_qubits_ > 30) {
            throw ArgumentError("StateVector: num_qubits out of range");
        }
        if (amps_.size() != (Eigen::Index{1} << num_qubits_)) {
            throw ArgumentError("StateVector: amplitude count must be 2^num_qubits");
        }
        if (!amps_.allFinite()) {
            throw ArgumentError("StateVector: non-finite amplitude");
        }
    }

    int num_qubits() const noexcept { return num_qubits_; }
    Eigen::Index dimension() const noexcept { return amps_.size(); }
    const Vector& amps() const noexcept { return amps_; }
    Amp operator[](Eigen::Index i) const { return amps_(i); }

    Scalar squared_norm() const { return amps_.squaredNorm(); }
    Scalar norm() const { return amps_.norm(); }

    bool is_normalized(Scalar tol = Tolerance<Scalar>::norm()) const {
        return std::abs(norm() - Scalar(1)) <= tol;
    }

    StateVector normalized() const {
        const Scalar n = norm();
        if (!(n > Scalar(0))) {
            throw ArgumentError("StateVector: cannot normalize the zero vector");
        }
        return StateVector(num_qubits_, amps_ / n);
    }

    friend StateVector operator*(Amp c, const StateVector& s) {
        return StateVector(s.num_qubits_, c * s.amps_);
    }
    friend StateVector operator*(Scalar c, const StateVector& s) { return Amp(c) * s; }
    friend StateVector operator+(const StateVector& a, const StateVector& b) {
        check_same_shape(a, b);
        return StateVector(a.num_qubits_, a.amps_ + b.amps_);
    }
    friend StateVector operator-(const StateVector& a, const StateVector& b) {
        check_same_shape(a, b);
        return StateVector(a.num_qubits_, a.amps_ - b.amps_);
    }
    StateVector operator-() const { return StateVector(num_qubits_, -amps_); }

    /// Largest elementwise modulus of the difference; throws on shape mismatch.
    friend Scalar max_abs_diff(const StateVector& a, const StateVector& b) {
        check_same_shape(a, b);
        if (a.dimension() == 0) return Scalar(0);
        return (a.amps_ - b.amps_).cwiseAbs().maxCoeff();
    }

private:
    static void check_same_shape(const StateVector& a, const StateVector& b) {
        if (a.num_qubits_ != b.num_qubits_) {
            throw ArgumentError("StateVector: qubit count mismatch");
        }
    }

    int num_qubits_;
    Vector amps_;
};

template <class Scalar = double>
class Unitary {
public:
    using Matrix = GateMatrix<Scalar>;

    Unitary(int num_qubits, Matrix entries) : num_qubits_(num_qubits), entries_(std::move(entries)) {
        if (num_qubits_ < 1 || num_qubits_ > 3) {
            throw ArgumentError("Unitary: only 1- to 3-qubit gates are supported");
        }
        const Eigen::Index dim = Eigen::Index{1} << num_qubits_;
        if (entries_.rows() != dim || entries_.cols() != dim) {
            throw ArgumentError("Unitary: matrix must be 2^k x 2^k");
        }
        if (!entries_.allFinite()) {
            throw ArgumentError("Unitary: non-finite entry");
        }
        if (unitarity_error() > Tolerance<Scalar>::unitarity() * Scalar(dim)) {
            throw ArgumentError("Unitary: matrix is not unitary");
        }
    }

    int num_qubits() const noexcept { return num_qubits_; }
    const Matrix& matrix() const noexcept { return entries_; }

    /// max |(U^dagger U - I)_ij|
    Scalar unitarity_error() const {
        const Matrix gram = entries_.adjoint() * entries_;
        return (gram - Matrix::Identity(entries_.rows(), entries_.cols())).cwiseAbs().maxCoeff();
    }

    friend Unitary operator*(const Unitary& a, const Unitary& b) {
        if (a.num_qubits_ != b.num_qubits_) {
            throw ArgumentError("Unitary: cannot compose gates of different arity");
        }
        return Unitary(a.num_qubits_, a.entries_ * b.entries_);
    }

private:
    int num_qubits_;
    Matrix entries_;
};

template <class Scalar = double>
struct MeasurementBranch {
    std::string outcome;  // one '0'/'1' per measured qubit, in the order requested
    Scalar probability{};
    StateVector<Scalar> post_state_unnormalized;
    std::optional<StateVector<Scalar>> post_state_normalized;  // empty when probability is negligible
};

enum class Gate { I, H, X, Y, Z, CNOT, UY };

/// Parses "I", "H", "X", "Y", "Z", "CNOT", "UY" (also "U_Y").
inline Gate gate_from_name(std::string_view name) {
    if (name == "I") return Gate::I;
    if (name == "H") return Gate::H;
    if (name == "X") return Gate::X;
    if (name == "Y") return Gate::Y;
    if (name == "Z") return Gate::Z;
    if (name == "CNOT" || name == "CX") return Gate::CNOT;
    if (name == "UY" || name == "U_Y") return Gate::UY;
    throw ArgumentError("unknown gate name: " + std::string(name));
}

/// Basis state with amplitude 1 at `basis_index`.
template <class Scalar = double>
StateVector<Scalar> make_state(int num_qubits, std::int64_t basis_index) {
    if (num_qubits < 1 || num_qubits > 30) {
        throw ArgumentError("make_state: num_qubits out of range");
    }
    const std::int64_t dim = std::int64_t{1} << num_qubits;
    if (basis_index < 0 || basis_index >= dim) {
        throw ArgumentError("make_state: basis index out of range");
    }
    AmpVector<Scalar> amps = AmpVector<Scalar>::Zero(dim);
    amps(basis_index) = Complex<Scalar>(1);
    return StateVector<Scalar>(num_qubits, std::move(amps));
}

template <class Scalar>
StateVector<Scalar> make_state(AmpVector<Scalar> amps) {
    const auto dim = amps.size();
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    return StateVector<Scalar>(n, std::move(amps));
}

/// Kronecker product; `a`'s qubits end up leftmost.
template <class Scalar>
StateVector<Scalar> tensor(const StateVector<Scalar>& a, const StateVector<Scalar>& b) {
    const Eigen::Index nb = b.dimension();
    AmpVector<Scalar> out(a.dimension() * nb);
    for (Eigen::Index i = 0; i < a.dimension(); ++i) {
        out.segment(i * nb, nb) = a[i] * b.amps();
    }
    return StateVector<Scalar>(a.num_qubits() + b.num_qubits(), std::move(out));
}

/// <a|b>, conjugate-linear in `a`.
template <class Scalar>
Complex<Scalar> inner_product(const StateVector<Scalar>& a, const StateVector<Scalar>& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw ArgumentError("inner_product: dimension mismatch");
    }
    return a.amps().dot(b.amps());
}

namespace detail {

inline void check_qubit_list(const Qubits& qubits, int num_qubits, const char* who) {
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] < 0 || qubits[i] >= num_qubits) {
            throw ArgumentError(std::string(who) + ": qubit index out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (qubits[j] == qubits[i]) {
                throw ArgumentError(std::string(who) + ": duplicate qubit index");
            }
        }
    }
}

inline std::int64_t qubit_mask(int qubit, int num_qubits) {
    return std::int64_t{1} << (num_qubits - 1 - qubit);
}

/// Scatters the bits of `local` (big-endian over `qubits`) into a full basis index.
inline std::int64_t scatter_bits(std::int64_t local, const Qubits& qubits, int num_qubits) {
    std::int64_t idx = 0;
    const int k = static_cast<int>(qubits.size());
    for (int t = 0; t < k; ++t) {
        if ((local >> (k - 1 - t)) & 1) idx |= qubit_mask(qubits[t], num_qubits);
    }
    return idx;
}

/// Complement of `qubits`, in ascending order.
inline Qubits remaining_qubits(const Qubits& qubits, int num_qubits) {
    Qubits rest;
    for (int q = 0; q < num_qubits; ++q) {
        if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) rest.push_back(q);
    }
    return rest;
}

} // namespace detail

/// Applies `u` to `targets`; targets[0] is the most significant qubit of u's basis.
template <class Scalar>
StateVector<Scalar> apply_unitary(const StateVector<Scalar>& s, const Qubits& targets,
                                  const Unitary<Scalar>& u) {
    const int n = s.num_qubits();
    detail::check_qubit_list(targets, n, "apply_unitary");
    if (static_cast<int>(targets.size()) != u.num_qubits()) {
        throw ArgumentError("apply_unitary: target count does not match gate arity");
    }
    const Qubits spectators = detail::remaining_qubits(targets, n);
    const std::int64_t local_dim = std::int64_t{1} << targets.size();
    const std::int64_t outer_dim = std::int64_t{1} << spectators.size();

    std::vector<std::int64_t> offsets(local_dim);
    for (std::int64_t l = 0; l < local_dim; ++l) offsets[l] = detail::scatter_bits(l, targets, n);

    AmpVector<Scalar> out(s.dimension());
    AmpVector<Scalar> local(local_dim);
    for (std::int64_t o = 0; o < outer_dim; ++o) {
        const std::int64_t base = detail::scatter_bits(o, spectators, n);
        for (std::int64_t l = 0; l < local_dim; ++l) local(l) = s[base | offsets[l]];
        const AmpVector<Scalar> mixed = u.matrix() * local;
        for (std::int64_t l = 0; l < local_dim; ++l) out(base | offsets[l]) = mixed(l);
    }
    return StateVector<Scalar>(n, std::move(out));
}

/// All 2^|qubits| outcomes in lexicographic order, measured qubits removed from the post-states.
template <class Scalar>
std::vector<MeasurementBranch<Scalar>> measure_enumerate(const StateVector<Scalar>& s,
                                                         const Qubits& qubits) {
    const int n = s.num_qubits();
    detail::check_qubit_list(qubits, n, "measure_enumerate");
    if (std::abs(s.norm() - Scalar(1)) > Tolerance<Scalar>::measurement_input()) {
        throw ContractError("measure_enumerate: input state is not normalized");
    }
    const Qubits rest = detail::remaining_qubits(qubits, n);
    const int k = static_cast<int>(qubits.size());
    const std::int64_t rest_dim = std::int64_t{1} << rest.size();

    std::vector<MeasurementBranch<Scalar>> branches;
    branches.reserve(std::size_t{1} << k);
    for (std::int64_t m = 0; m < (std::int64_t{1} << k); ++m) {
        const std::int64_t fixed = detail::scatter_bits(m, qubits, n);
        AmpVector<Scalar> post(rest_dim);
        for (std::int64_t r = 0; r < rest_dim; ++r) {
            post(r) = s[fixed | detail::scatter_bits(r, rest, n)];
        }
        std::string outcome(k, '0');
        for (int t = 0; t < k; ++t) {
            if ((m >> (k - 1 - t)) & 1) outcome[t] = '1';
        }
        StateVector<Scalar> unnormalized(static_cast<int>(rest.size()), std::move(post));
        const Scalar p = unnormalized.squared_norm();
        std::optional<StateVector<Scalar>> normalized;
        if (p >= Tolerance<Scalar>::negligible_probability()) normalized = unnormalized.normalized();
        branches.push_back({std::move(outcome), p, std::move(unnormalized), std::move(normalized)});
    }
    return branches;
}

/// Draws one outcome using a caller-owned generator.
template <class Scalar, class Rng>
std::string sample_measurement(const StateVector<Scalar>& s, const Qubits& qubits, Rng& rng) {
    const auto branches = measure_enumerate(s, qubits);
    Scalar total(0);
    for (const auto& b : branches) total += b.probability;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Scalar u = Scalar(unit(rng)) * total;
    Scalar acc(0);
    for (const auto& b : branches) {
        acc += b.probability;
        if (u < acc && b.probability > Scalar(0)) return b.outcome;
    }
    // u landed on the rounding sliver at the top; take the last outcome with weight.
    for (auto it = branches.rbegin(); it != branches.rend(); ++it) {
        if (it->probability > Scalar(0)) return it->outcome;
    }
    return branches.back().outcome;
}

template <class Scalar>
std::string sample_measurement(const StateVector<Scalar>& s, const Qubits& qubits,
                               std::uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    return sample_measurement(s, qubits, rng);
}

/// H, X, Y, Z, CNOT, I and U_Y(angle) = cos(angle) I - i sin(angle) Y.
/// `angle` must be given for U_Y and only for U_Y.
template <class Scalar = double>
Unitary<Scalar> standard_gate(Gate gate, std::optional<Scalar> angle = std::nullopt) {
    using C = Complex<Scalar>;
    using M = GateMatrix<Scalar>;
    if ((gate == Gate::UY) != angle.has_value()) {
        throw ArgumentError("standard_gate: an angle is required for U_Y and only for U_Y");
    }
    const C i(0, 1);
    M m(2, 2);
    switch (gate) {
    case Gate::I:
        m << C(1), C(0), C(0), C(1);
        break;
    case Gate::H: {
        const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
        m << C(r), C(r), C(r), C(-r);
        break;
    }
    case Gate::X:
        m << C(0), C(1), C(1), C(0);
        break;
    case Gate::Y:
        m << C(0), -i, i, C(0);
        break;
    case Gate::Z:
        m << C(1), C(0), C(0), C(-1);
        break;
    case Gate::UY: {
        const Scalar c = std::cos(*angle);
        const Scalar sn = std::sin(*angle);
        // cos I - i sin Y = [[c, -s], [s, c]]
        m << C(c), C(-sn), C(sn), C(c);
        break;
    }
    case Gate::CNOT: {
        M cx = M::Zero(4, 4);
        cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = C(1);
        return Unitary<Scalar>(2, std::move(cx));
    }
    }
    return Unitary<Scalar>(1, std::move(m));
}

template <class Scalar = double>
Unitary<Scalar> standard_gate(std::string_view name, std::optional<Scalar> angle = std::nullopt) {
    return standard_gate<Scalar>(gate_from_name(name), angle);
}

} // namespace bellport
