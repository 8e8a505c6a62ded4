#pragma once

// Entangled-pair resource states: two Bell species in superposition, plus the
// residual distortion left behind by a Heisenberg-exchange control process.

#include <bellport/errors.hpp>
#include <bellport/qcore.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>

namespace bellport {

/// Exact rational p/q, used for the caller-supplied approximation Q(j).
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    template <class Scalar = double>
    Scalar value() const {
        if (den == 0) throw ArgumentError("Rational: zero denominator");
        return Scalar(num) / Scalar(den);
    }
};

/// Physical parameters of the pair source: exchange J, fields B1/B2, the
/// number of control cycles n and the rational approximation Q(j).
template <class Scalar = double>
struct PhysicalSource {
    Scalar J{};
    Scalar B1{};
    Scalar B2{};
    int n = 0;
    Rational q_of_j{};
};

template <class Scalar = double>
struct ResourceParams {
    Scalar theta{};
    Scalar ndelta{};  // the product n * delta; the only distortion knob downstream code reads
    std::optional<PhysicalSource<Scalar>> physical;

    static ResourceParams from_physical(Scalar theta, const PhysicalSource<Scalar>& src);

    /// True when `physical` is absent or reproduces `ndelta` within 1e-12.
    bool consistent() const;
};

/// j = J / sqrt(B_-^2 + 4 J^2), B_- = B1 - B2. Lies in (0, 1/2] for J > 0.
template <class Scalar>
Scalar coupling_ratio(Scalar J, Scalar B1, Scalar B2) {
    const Scalar bminus = B1 - B2;
    if (J == Scalar(0) && bminus == Scalar(0)) {
        throw ArgumentError("coupling_ratio: J = 0 and B1 = B2 leaves j undefined");
    }
    return J / std::sqrt(bminus * bminus + Scalar(4) * J * J);
}

/// delta = j - Q(j).
template <class Scalar>
Scalar delta_from_physical(Scalar J, Scalar B1, Scalar B2, Scalar q_of_j) {
    return coupling_ratio(J, B1, B2) - q_of_j;
}

template <class Scalar>
Scalar delta_from_physical(Scalar J, Scalar B1, Scalar B2, Rational q_of_j) {
    return delta_from_physical(J, B1, B2, q_of_j.template value<Scalar>());
}

template <class Scalar>
ResourceParams<Scalar> ResourceParams<Scalar>::from_physical(Scalar theta,
                                                             const PhysicalSource<Scalar>& src) {
    if (src.n < 0) throw ArgumentError("ResourceParams: n must be non-negative");
    ResourceParams p;
    p.theta = theta;
    p.ndelta = Scalar(src.n) * delta_from_physical(src.J, src.B1, src.B2, src.q_of_j);
    p.physical = src;
    return p;
}

template <class Scalar>
bool ResourceParams<Scalar>::consistent() const {
    if (!physical) return true;
    const auto& s = *physical;
    const Scalar expected = Scalar(s.n) * delta_from_physical(s.J, s.B1, s.B2, s.q_of_j);
    return std::abs(expected - ndelta) <= Tolerance<Scalar>::norm();
}

/// beta_xy = (|0 y> + (-1)^x |1 ~y>) / sqrt(2).
template <class Scalar = double>
StateVector<Scalar> bell_state(int x, int y) {
    if ((x != 0 && x != 1) || (y != 0 && y != 1)) {
        throw ArgumentError("bell_state: bits must be 0 or 1");
    }
    const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
    AmpVector<Scalar> amps = AmpVector<Scalar>::Zero(4);
    amps(y) = Complex<Scalar>(r);
    amps(2 + (1 - y)) = Complex<Scalar>(x == 0 ? r : -r);
    return StateVector<Scalar>(2, std::move(amps));
}

/// sin(theta) beta_01 - cos(theta) beta_10
template <class Scalar>
StateVector<Scalar> resource_ideal(Scalar theta) {
    return std::sin(theta) * bell_state<Scalar>(0, 1) - std::cos(theta) * bell_state<Scalar>(1, 0);
}

/// sin(theta) beta_01 - e^{i phi} cos(phi) cos(theta) beta_10 + i e^{i phi} sin(phi) cos(theta) beta_00,
/// with phi = 2 pi n delta. Only the cos(theta) species picks up the distortion.
template <class Scalar>
StateVector<Scalar> resource_distorted(Scalar theta, Scalar ndelta) {
    using C = Complex<Scalar>;
    const Scalar phi = Scalar(2) * std::numbers::pi_v<Scalar> * ndelta;
    const C phase = std::polar(Scalar(1), phi);
    const Scalar c = std::cos(theta);
    const C to_10 = -phase * std::cos(phi) * c;
    const C to_00 = C(0, 1) * phase * std::sin(phi) * c;
    return std::sin(theta) * bell_state<Scalar>(0, 1) + to_10 * bell_state<Scalar>(1, 0)
           + to_00 * bell_state<Scalar>(0, 0);
}

template <class Scalar>
StateVector<Scalar> resource_state(const ResourceParams<Scalar>& params) {
    return resource_distorted(params.theta, params.ndelta);
}

} // namespace bellport
