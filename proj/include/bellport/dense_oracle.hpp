#pragma once

// Reference path for gate application: expand a k-qubit gate to the full
// 2^n x 2^n operator with Kronecker products and a qubit permutation, then
// multiply. Slow and obvious; used only to check apply_unitary.

#include <bellport/qcore.hpp>

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cstdint>

namespace bellport::oracle {

/// Full operator for `u` acting on `targets` of an n-qubit register.
template <class Scalar>
GateMatrix<Scalar> expand_gate(int num_qubits, const Qubits& targets, const Unitary<Scalar>& u) {
    using M = GateMatrix<Scalar>;
    // Reordered register: targets first (in the given order), the rest ascending.
    Qubits order = targets;
    for (int q = 0; q < num_qubits; ++q) {
        if (std::find(targets.begin(), targets.end(), q) == targets.end()) order.push_back(q);
    }
    const int rest = num_qubits - static_cast<int>(targets.size());
    const M id = M::Identity(Eigen::Index{1} << rest, Eigen::Index{1} << rest);
    const M reordered = Eigen::kroneckerProduct(u.matrix(), id).eval();

    // perm(natural, reordered) = 1 when the two indices name the same basis ket.
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    M perm = M::Zero(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        Eigen::Index natural = 0;
        for (int pos = 0; pos < num_qubits; ++pos) {
            const int bit = (r >> (num_qubits - 1 - pos)) & 1;
            natural |= Eigen::Index(bit) << (num_qubits - 1 - order[pos]);
        }
        perm(natural, r) = Complex<Scalar>(1);
    }
    return perm * reordered * perm.transpose();
}

template <class Scalar>
StateVector<Scalar> apply_dense(const StateVector<Scalar>& s, const Qubits& targets,
                                const Unitary<Scalar>& u) {
    return StateVector<Scalar>(s.num_qubits(), expand_gate(s.num_qubits(), targets, u) * s.amps());
}

/// Haar-ish random state: normalized complex Gaussian vector.
template <class Scalar, class Rng>
StateVector<Scalar> random_state(int num_qubits, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    AmpVector<Scalar> v(Eigen::Index{1} << num_qubits);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex<Scalar>(Scalar(g(rng)), Scalar(g(rng)));
    return StateVector<Scalar>(num_qubits, v / v.norm());
}

/// Random k-qubit unitary from the Q factor of a complex Gaussian matrix.
template <class Scalar, class Rng>
Unitary<Scalar> random_unitary(int num_qubits, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    GateMatrix<Scalar> a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = Complex<Scalar>(Scalar(g(rng)), Scalar(g(rng)));
    Eigen::HouseholderQR<GateMatrix<Scalar>> qr(a);
    GateMatrix<Scalar> q = qr.householderQ() * GateMatrix<Scalar>::Identity(dim, dim);
    return Unitary<Scalar>(num_qubits, q);
}

/// Distinct random targets in random order.
template <class Rng>
Qubits random_targets(int num_qubits, int k, Rng& rng) {
    Qubits all(num_qubits);
    for (int q = 0; q < num_qubits; ++q) all[q] = q;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(k);
    return all;
}

} // namespace bellport::oracle
