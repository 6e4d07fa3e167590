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
#include <cassert>
#include <cmath>
#include <complex>

#include "bdris/arch.hpp"
#include "bdris/errors.hpp"
#include "bdris/linalg.hpp"
#include "bdris/network.hpp"
#include "bdris/takagi.hpp"

namespace bdris {

// Structure-oriented symmetric unitary projection of an arbitrary square
// matrix X onto the scattering set realizable by an architecture:
//
//   1. symmetrize Xs = (X + X^T)/2
//   2. Takagi Xs = Q Sigma Q^T, keep the rank-R factors Q_R, Sigma_R
//   3. the attainability condition Theta Q_R^* = Q_R turns, through the
//      Cayley map, into B * [z0 Re(Q_R)] = -Im(Q_R); only the imaginary
//      part survives since both sides of the raw equation are purely
//      imaginary
//   4. vectorize, restrict vec(B) = R b to the independent variables of
//      the mask, and solve A b = z in the least-squares sense
//   5. expand b back to B and map to Theta
//
// Block-diagonal architectures (group/forest/cluster) are projected one
// diagonal block at a time: the Frobenius objective separates exactly over
// blocks and the off-block entries of X are unreachable anyway.
struct ProjectionResult {
    Susceptance b;
    Scattering theta;
    double lower_bound; // || Sigma_R - I_R ||_F^2
    double achieved;    // || X - theta ||_F^2 against the original input
    double ls_residual; // residual of the structured least-squares solve
    bool degenerate = false;
};

inline double lower_bound(const Eigen::VectorXd& sigma) {
    return (sigma.array() - 1.0).square().sum();
}

struct LinearSystem {
    Eigen::MatrixXd a; // N R x n_b
    Eigen::VectorXd z; // N R
};

// A = (Im{C}^T kron I_N) R and z = vec(Im{D}) with C = j z0 (Q_R^* + Q_R)
// and D = Q_R^* - Q_R. R has at most one unit entry per row, so column c
// of A is assembled directly from the rows of Im{C} indexed by the mask
// positions of variable c instead of forming the N^2-column Kronecker
// factor.
inline LinearSystem build_linear_system(const Eigen::MatrixXcd& q_r, const StructureMaps& maps,
                                        double z0) {
    const Eigen::Index n = maps.n();
    const Eigen::Index r = q_r.cols();
    if (q_r.rows() != n)
        throw DimensionMismatch("build_linear_system: q_r rows must equal mask size");

    LinearSystem sys;
    sys.a = Eigen::MatrixXd::Zero(n * r, maps.n_b);
    sys.z.resize(n * r);
    if (r == 0)
        return sys;

    const Eigen::MatrixXcd c = std::complex<double>(0, z0) * (q_r.conjugate() + q_r);
    assert(c.real().cwiseAbs().maxCoeff() <= 1e-10 && "real part of C must vanish");
    const Eigen::MatrixXd im_c = c.imag();            // 2 z0 Re(Q_R)
    const Eigen::MatrixXd im_d = -2.0 * q_r.imag();   // Im(Q_R^* - Q_R)
    for (Eigen::Index k = 0; k < r; ++k)
        sys.z.segment(k * n, n) = im_d.col(k);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            if (maps.indicator(i, j) == 0)
                continue;
            const Eigen::Index var = maps.counting(i, j) - 1;
            for (Eigen::Index k = 0; k < r; ++k) {
                sys.a(k * n + i, var) += im_c(j, k);
                if (i != j)
                    sys.a(k * n + j, var) += im_c(i, k);
            }
        }
    return sys;
}

namespace detail {

struct BlockProjection {
    Eigen::MatrixXd b;
    double lower_bound;
    double ls_residual_sq;
    bool degenerate;
};

// projection of one (stem-structured) block; x_blk is the symmetrized
// slice of the input restricted to the block
inline BlockProjection project_block(const Eigen::MatrixXcd& x_blk, const StructureMaps& maps,
                                     double z0) {
    BlockProjection out;
    const Eigen::Index n = x_blk.rows();
    out.degenerate = x_blk.norm() <= 1e-14;
    if (out.degenerate) {
        out.b = Eigen::MatrixXd::Zero(n, n);
        out.lower_bound = 0.0;
        out.ls_residual_sq = 0.0;
        return out;
    }
    const TakagiFactors<double> tf = takagi(x_blk);
    out.lower_bound = lower_bound(tf.sigma.head(tf.rank));
    if (tf.rank == 0) {
        out.b = Eigen::MatrixXd::Zero(n, n);
        out.ls_residual_sq = 0.0;
        return out;
    }
    const LinearSystem sys = build_linear_system(tf.q_r(), maps, z0);
    const LeastSquaresSolution sol = least_squares(sys.a, sys.z);
    out.b = expand(sol.x, maps);
    out.ls_residual_sq = sol.residual * sol.residual;
    return out;
}

} // namespace detail

inline ProjectionResult project(const Eigen::MatrixXcd& x, const ArchSpec& spec,
                                double z0 = kDefaultZ0) {
    if (x.rows() != spec.n || x.cols() != spec.n)
        throw DimensionMismatch("project: input size does not match spec");
    const Eigen::Index n = spec.n;
    const Eigen::MatrixXcd xs = ((x + x.transpose()) / 2.0).eval();

    ProjectionResult res;
    res.lower_bound = 0.0;
    double resid_sq = 0.0;

    const int blocks = spec.group_count();
    const Eigen::Index ng = spec.group_size();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);

    if (xs.norm() <= 1e-14 * std::max(1.0, x.norm())) {
        // antisymmetric or zero input: the symmetric target vanishes and
        // the projection is unconstrained; report B = 0 with a flag
        res.degenerate = true;
    } else {
        const ArchSpec blk_spec = arch_stem(static_cast<int>(ng), spec.stems_per_group());
        const StructureMaps maps = transform_matrix(blk_spec);
        bool all_degenerate = true;
        for (int g = 0; g < blocks; ++g) {
            const Eigen::Index off = g * ng;
            const detail::BlockProjection bp =
                detail::project_block(xs.block(off, off, ng, ng), maps, z0);
            b.block(off, off, ng, ng) = bp.b;
            res.lower_bound += bp.lower_bound;
            resid_sq += bp.ls_residual_sq;
            all_degenerate = all_degenerate && bp.degenerate;
        }
        res.degenerate = all_degenerate;
    }

    res.ls_residual = std::sqrt(resid_sq);
    res.b = make_susceptance(std::move(b), spec);
    res.theta = scattering_from_susceptance(res.b, z0);
    res.achieved = (x - res.theta.theta).squaredNorm();
    return res;
}

} // namespace bdris
