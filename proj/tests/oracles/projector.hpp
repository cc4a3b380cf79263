#pragma once

// Reference single-photon projection. Rotates the detection mode phi onto
// mode 0 with a unitary W (built by Gram-Schmidt from phi), removes one
// photon from mode 0 with the sqrt(n) rule, and rotates back; all
// rotations go through the permanent oracle.

#include <cmath>
#include <map>

#include <Eigen/Dense>

#include "permanent.hpp"

namespace oracle {

/// Unitary V with first column phi (Gram-Schmidt over unit vectors).
inline Eigen::MatrixXcd basis_with_first(const Eigen::VectorXcd& phi)
{
    const int m = static_cast<int>(phi.size());
    Eigen::MatrixXcd cols(m, m);
    cols.col(0) = phi;
    // Fill with unit vectors, then orthonormalize (QR keeps span order).
    int next = 1;
    for (int k = 0; k < m && next < m; ++k) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(m);
        e(k) = 1.0;
        Eigen::VectorXcd v = e;
        for (int j = 0; j < next; ++j)
            v -= cols.col(j).dot(v) * cols.col(j);
        if (v.norm() > 1e-6)
            cols.col(next++) = v.normalized();
    }
    return cols;
}

/// Pi|s> with Pi = sum_h conj(phi_h) a_h, unnormalized.
inline std::map<Occ, Complex> project(const std::map<Occ, Complex>& s, const Eigen::VectorXcd& phi)
{
    // New modes b_k = sum_h conj(V(h,k)) a_h, so b_0 is the projector and
    // a+_h = sum_k conj(V(h,k)) b+_k: rewriting in b is the map u = conj(V).
    const Eigen::MatrixXcd v = basis_with_first(phi);
    const Eigen::MatrixXcd to_b = v.conjugate();
    std::map<Occ, Complex> in_b = evolve(to_b, s);

    std::map<Occ, Complex> cut;
    for (const auto& [occ, a] : in_b) {
        if (occ[0] == 0 || std::abs(a) < 1e-15)
            continue;
        Occ o = occ;
        --o[0];
        cut[o] += a * std::sqrt(static_cast<double>(occ[0]));
    }
    // Back to the a modes: inverse of to_b.
    return evolve(to_b.adjoint(), cut);
}

} // namespace oracle
