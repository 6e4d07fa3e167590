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
#include <cstdint>

#include "bdris/errors.hpp"
#include "bdris/linalg.hpp"
#include "bdris/rng.hpp"

namespace bdris {

// distance-power law P(d) = l0 (d/d0)^{-alpha}
struct PathLossModel {
    double l0 = 1e-3; // reference loss at d0 (-30 dB)
    double d0 = 1.0;  // meters
    double d_bs_ris = 70.710678118654752440;  // 50 sqrt(2)
    double d_ris_user = 111.80339887498948482; // 50 sqrt(5)
    double alpha_bs_ris = 2.0;
    double alpha_ris_user = 2.2;

    double at(double d, double alpha) const { return l0 * std::pow(d / d0, -alpha); }
    double bs_ris() const { return at(d_bs_ris, alpha_bs_ris); }
    double ris_user() const { return at(d_ris_user, alpha_ris_user); }
};

struct ChannelSet {
    Eigen::MatrixXcd e; // BS -> RIS, N x L
    Eigen::MatrixXcd h; // RIS -> users, N x K (columns h_k)
    double noise_power = 1e-11; // watts per user (-80 dBm)
    PathLossModel pathloss;

    Eigen::Index n() const { return e.rows(); }
    Eigen::Index l() const { return e.cols(); }
    Eigen::Index k() const { return h.cols(); }
};

struct ChannelOptions {
    PathLossModel pathloss;
    double noise_power = 1e-11;
};

// Rayleigh-faded links with the distance-power law applied per link;
// entries of E and h_k are iid CN(0, P(d))
inline ChannelSet gen_channels(int n, int l, int k, std::uint64_t seed,
                               const ChannelOptions& opts = {}) {
    if (n < 1 || l < 1 || k < 1)
        throw DimensionMismatch("gen_channels: dimensions must be positive");
    SplitMix64 rng(seed);
    ChannelSet ch;
    ch.pathloss = opts.pathloss;
    ch.noise_power = opts.noise_power;
    ch.e = std::sqrt(opts.pathloss.bs_ris()) * complex_gaussian(rng, n, l);
    ch.h = std::sqrt(opts.pathloss.ris_user()) * complex_gaussian(rng, n, k);
    return ch;
}

// || H^H theta E ||_F^2
inline double sum_gain(const ChannelSet& ch, const Eigen::MatrixXcd& theta) {
    if (theta.rows() != ch.n() || theta.cols() != ch.n())
        throw DimensionMismatch("sum_gain: theta size does not match channels");
    return (ch.h.adjoint() * theta * ch.e).squaredNorm();
}

// multiplexing gain of the cascaded channel
inline int dof(int k, int l, int n) { return std::min({k, l, n}); }

// SVD analysis of the relaxed problem: with H^H = U S V^H and
// E = P Sigma G^H, any unitary theta obeys
// ||H^H theta E||_F^2 <= || S_M Sigma_M ||_F^2, M = min(K, L, N)
struct UpperBoundAnalysis {
    int m;
    double ub_value;
    Eigen::MatrixXcd v_m, v_rest; // right factor of H^H, split at M
    Eigen::MatrixXcd p_m, p_rest; // left factor of E, split at M
    Eigen::VectorXd s_m;          // leading singular values of H^H
    Eigen::VectorXd sigma_m;      // leading singular values of E
};

inline UpperBoundAnalysis upper_bound(const ChannelSet& ch) {
    const int m = dof(static_cast<int>(ch.k()), static_cast<int>(ch.l()),
                      static_cast<int>(ch.n()));
    const auto hh = svd_partition(ch.h.adjoint().eval(), m); // K x N
    const auto ee = svd_partition(ch.e, m);                  // N x L
    UpperBoundAnalysis ub;
    ub.m = m;
    ub.v_m = hh.v_head();
    ub.v_rest = hh.v_tail();
    ub.p_m = ee.u_head();
    ub.p_rest = ee.u_tail();
    ub.s_m = hh.s.head(m);
    ub.sigma_m = ee.s.head(m);
    ub.ub_value = (ub.s_m.array() * ub.sigma_m.array()).square().sum();
    return ub;
}

// theta* = V_M P_M^H + V_{N-M} X0 P_{N-M}^H (phase factors set to one);
// x0 is unitary, or zero for the projection input
inline Eigen::MatrixXcd theta_star(const UpperBoundAnalysis& ub, const Eigen::MatrixXcd& x0) {
    Eigen::MatrixXcd theta = ub.v_m * ub.p_m.adjoint();
    if (ub.v_rest.cols() > 0) {
        if (x0.rows() != ub.v_rest.cols() || x0.cols() != ub.v_rest.cols())
            throw DimensionMismatch("theta_star: x0 must be (N-M) x (N-M)");
        if (x0.norm() > 0)
            theta += ub.v_rest * x0 * ub.p_rest.adjoint();
    }
    return theta;
}

// symmetry defect of Lambda = P_M^H V_M^*; zero only in the M = 1 case
// (or contrived channels). A non-zero defect is what blocks reciprocal
// (symmetric) scattering matrices from reaching the relaxed bound at M > 1.
inline double reciprocity_defect(const Eigen::MatrixXcd& v_m, const Eigen::MatrixXcd& p_m) {
    const Eigen::MatrixXcd lambda = p_m.adjoint() * v_m.conjugate();
    return (lambda - lambda.transpose()).norm();
}

inline double reciprocity_defect(const ChannelSet& ch) {
    const UpperBoundAnalysis ub = upper_bound(ch);
    return reciprocity_defect(ub.v_m, ub.p_m);
}

} // namespace bdris
