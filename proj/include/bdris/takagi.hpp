// bdris - scattering matrix design for beyond-diagonal RIS architectures
// Copyright (C) 2026 the bdris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "bdris/errors.hpp"

namespace bdris {

// Takagi factorization A = Q diag(sigma) Q^T of a complex symmetric A,
// with Q unitary and sigma the singular values of A in descending order.
//
// Method: SVD A = U S V^H, then phase correction Q = U D^{1/2} with
// D = U^H conj(V). D is diagonal when the singular values are separated;
// within a cluster of (near-)equal singular values it is only
// block-unitary, and the block is fixed by a small symmetric-eigenvalue
// Takagi of U_b^H A conj(U_b). Square roots take the principal branch
// (argument halved into (-pi/2, pi/2]); each column is afterwards sign-
// normalized so its largest entry lies in the right half plane, which
// removes the residual +-1 ambiguity of the factorization.
template <typename Real = double>
struct TakagiFactors {
    using Complex = std::complex<Real>;
    using MatrixC = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
    using VectorR = Eigen::Vector<Real, Eigen::Dynamic>;

    MatrixC q_full;      // unitary N x N
    VectorR sigma;       // descending, nonnegative
    Eigen::Index rank;   // entries of sigma above rank_tol * sigma(0)

    MatrixC q_r() const { return q_full.leftCols(rank); }
};

namespace detail {

// Takagi basis of a small complex symmetric block via the real symmetric
// embedding [[X, Y], [Y, -X]] of M = X + jY: an eigenvector (u; v) with
// eigenvalue s > 0 satisfies M conj(u + jv) = s (u + jv), and the top-k
// eigenvectors map to a complex-orthonormal con-eigenbasis W with
// M = W diag(s) W^T.
template <typename Real>
Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>
takagi_block_basis(const Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>& m_block) {
    using MatrixR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    const Eigen::Index k = m_block.rows();
    MatrixR emb(2 * k, 2 * k);
    const MatrixR x = m_block.real();
    const MatrixR y = m_block.imag();
    emb.topLeftCorner(k, k) = x;
    emb.topRightCorner(k, k) = y;
    emb.bottomLeftCorner(k, k) = y;
    emb.bottomRightCorner(k, k) = -x;
    Eigen::SelfAdjointEigenSolver<MatrixR> es(emb);
    if (es.info() != Eigen::Success)
        throw DecompositionFailure("takagi: block eigendecomposition failed");
    // eigenvalues ascending; the k positive con-eigenvalues sit on top
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic> w(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const auto col = es.eigenvectors().col(2 * k - 1 - i);
        w.col(i).real() = col.head(k);
        w.col(i).imag() = col.tail(k);
    }
    return w;
}

// flip column signs so the first entry of largest modulus has
// Re > 0, or Im > 0 when it is purely imaginary
template <typename MatrixC>
void canonicalize_column_signs(MatrixC& q) {
    using Real = typename MatrixC::RealScalar;
    for (Eigen::Index c = 0; c < q.cols(); ++c) {
        Eigen::Index p = 0;
        Real best = 0;
        for (Eigen::Index i = 0; i < q.rows(); ++i) {
            const Real a = std::abs(q(i, c));
            if (a > best) {
                best = a;
                p = i;
            }
        }
        if (best <= Real(0))
            continue;
        const auto v = q(p, c);
        const Real re = v.real(), im = v.imag();
        if (re < -Real(1e-12) * best || (std::abs(re) <= Real(1e-12) * best && im < Real(0)))
            q.col(c) = -q.col(c);
    }
}

} // namespace detail

template <typename Derived>
TakagiFactors<typename Derived::RealScalar>
takagi(const Eigen::MatrixBase<Derived>& a_expr,
       typename Derived::RealScalar rank_tol = typename Derived::RealScalar(1e-9)) {
    using Real = typename Derived::RealScalar;
    using Complex = std::complex<Real>;
    using MatrixC = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
    static_assert(Eigen::NumTraits<typename Derived::Scalar>::IsComplex,
                  "takagi expects a complex symmetric matrix");

    const MatrixC a = a_expr;
    if (a.rows() != a.cols())
        throw DimensionMismatch("takagi: input must be square");
    const Eigen::Index n = a.rows();
    const Real a_norm = a.norm();
    if ((a - a.transpose()).norm() > Real(1e-8) * std::max(Real(1), a_norm))
        throw NotSymmetric("takagi: input is not complex symmetric");

    TakagiFactors<Real> f;
    if (n == 0) {
        f.q_full.resize(0, 0);
        f.sigma.resize(0);
        f.rank = 0;
        return f;
    }

    Eigen::BDCSVD<MatrixC> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const MatrixC& u = svd.matrixU();
    const MatrixC& v = svd.matrixV();
    f.sigma = svd.singularValues();
    f.q_full = u;

    const Real s0 = f.sigma(0);
    const Real gap_tol = Real(1e-8) * std::max(s0, std::numeric_limits<Real>::min());
    const Real zero_tol = rank_tol * s0;

    Eigen::Index b = 0;
    for (Eigen::Index i = 1; i <= n; ++i) {
        if (i < n && (f.sigma(i - 1) - f.sigma(i)) <= gap_tol)
            continue;
        const Eigen::Index k = i - b;
        if (k == 1) {
            Complex d = u.col(b).dot(v.col(b).conjugate()); // (U^H conj(V))_bb
            const Real mag = std::abs(d);
            d = (mag < Real(1e-14)) ? Complex(1) : d / mag;
            f.q_full.col(b) = u.col(b) * std::sqrt(d);
        } else if (f.sigma(b) > zero_tol) {
            MatrixC m_block = u.middleCols(b, k).adjoint() * a * u.middleCols(b, k).conjugate();
            m_block = ((m_block + m_block.transpose()) / Real(2)).eval();
            const MatrixC w = detail::takagi_block_basis<Real>(m_block);
            f.q_full.middleCols(b, k) = u.middleCols(b, k) * w;
        }
        // sigma ~ 0 clusters keep the raw U columns: they do not
        // contribute to the reconstruction and U is already unitary
        b = i;
    }

    detail::canonicalize_column_signs(f.q_full);

    f.rank = 0;
    if (s0 > Real(0))
        while (f.rank < n && f.sigma(f.rank) >= zero_tol)
            ++f.rank;

    const Real rec_err =
        (f.q_full * f.sigma.asDiagonal() * f.q_full.transpose() - a).norm() / std::max(Real(1), a_norm);
    if (rec_err > Real(1e-6))
        throw DecompositionFailure("takagi: reconstruction error " + std::to_string(rec_err));
    return f;
}

} // namespace bdris
