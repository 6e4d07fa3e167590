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

#include "bdris/errors.hpp"

namespace bdris {

// SVD with the leading-m / trailing split used by the upper-bound
// analysis: v = [v_head, v_tail] and likewise for u.
template <typename Scalar>
struct SvdPartition {
    using MatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    MatrixT u;                    // full left factor
    Eigen::VectorXd s;            // descending singular values
    MatrixT v;                    // full right factor
    Eigen::Index m;

    MatrixT u_head() const { return u.leftCols(m); }
    MatrixT u_tail() const { return u.rightCols(u.cols() - m); }
    MatrixT v_head() const { return v.leftCols(m); }
    MatrixT v_tail() const { return v.rightCols(v.cols() - m); }
};

template <typename Derived>
SvdPartition<typename Derived::Scalar> svd_partition(const Eigen::MatrixBase<Derived>& a,
                                                     Eigen::Index m) {
    if (m < 1 || m > std::min(a.rows(), a.cols()))
        throw DimensionMismatch("svd_partition: m out of range");
    using Scalar = typename Derived::Scalar;
    using MatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Eigen::BDCSVD<MatrixT> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SvdPartition<Scalar> p;
    p.u = svd.matrixU();
    p.s = svd.singularValues().template cast<double>();
    p.v = svd.matrixV();
    p.m = m;
    return p;
}

struct LeastSquaresSolution {
    Eigen::VectorXd x;
    double residual; // ||a x - z||_2
};

// Minimum-norm minimizer of ||a x - z|| via complete orthogonal
// decomposition; on rank deficiency a Tikhonov-regularized normal system
// with lambda = 1e-12 tr(a^T a)/n takes over. The normal-equation form is
// kept out of the solver on purpose: it squares the condition number.
inline LeastSquaresSolution least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& z) {
    if (a.rows() != z.size())
        throw DimensionMismatch("least_squares: row count mismatch");
    LeastSquaresSolution out;
    if (a.cols() == 0) {
        out.x.resize(0);
        out.residual = z.norm();
        return out;
    }
    if (a.rows() == 0) {
        out.x = Eigen::VectorXd::Zero(a.cols());
        out.residual = 0.0;
        return out;
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    if (cod.rank() < a.cols()) {
        const double lambda = 1e-12 * a.squaredNorm() / static_cast<double>(a.cols());
        Eigen::MatrixXd gram = a.transpose() * a;
        gram.diagonal().array() += lambda;
        out.x = gram.ldlt().solve(a.transpose() * z);
    } else {
        out.x = cod.solve(z);
    }
    out.residual = (a * out.x - z).norm();
    return out;
}

// Kronecker product a (x) b; (a (x) b) vec(X) = vec(b X a^T)
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using MatrixT = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    MatrixT out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

} // namespace bdris
