#pragma once

#include <bellport/qcore.hpp>

#include <doctest.h>

#include <complex>
#include <initializer_list>

namespace test_helpers {

using C = std::complex<double>;
using SV = bellport::StateVector<double>;

inline SV state_of(std::initializer_list<C> amps) {
    bellport::AmpVector<double> v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (const auto& a : amps) v(i++) = a;
    return bellport::make_state<double>(std::move(v));
}

inline void check_state(const SV& actual, const SV& expected, double tol = 1e-12) {
    REQUIRE(actual.num_qubits() == expected.num_qubits());
    for (Eigen::Index i = 0; i < actual.dimension(); ++i) {
        INFO("amplitude " << i << ": got " << actual[i] << ", want " << expected[i]);
        CHECK(std::abs(actual[i] - expected[i]) <= tol);
    }
}

inline void check_complex(C actual, C expected, double tol = 1e-12) {
    INFO("got " << actual << ", want " << expected);
    CHECK(std::abs(actual - expected) <= tol);
}

} // namespace test_helpers
