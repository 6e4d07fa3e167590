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
#include <vector>

#include "bdris/arch.hpp"
#include "bdris/channel.hpp"
#include "bdris/lbfgs.hpp"
#include "bdris/network.hpp"
#include "bdris/sosup.hpp"

namespace bdris {

// closed-form channel-gain design: project the relaxed SVD optimum
// V_M P_M^H (X0 = 0) onto the architecture's feasible set
struct GainDesign {
    ProjectionResult projection;
    double gain;     // sum_gain at the projected theta
    double ub_value; // relaxed upper bound
};

inline GainDesign ub_sosup(const ChannelSet& ch, const ArchSpec& spec, double z0 = kDefaultZ0) {
    const UpperBoundAnalysis ub = upper_bound(ch);
    const Eigen::MatrixXcd target = ub.v_m * ub.p_m.adjoint();
    GainDesign out{project(target, spec, z0), 0.0, ub.ub_value};
    out.gain = sum_gain(ch, out.projection.theta.theta);
    return out;
}

// || H^H theta(B) E ||_F^2 as a function of the independent variables of B
inline double gain_objective(const Eigen::VectorXd& b_vec, const ChannelSet& ch,
                             const StructureMaps& maps, double z0 = kDefaultZ0) {
    return sum_gain(ch, scattering_of(expand(b_vec, maps), z0));
}

inline double gain_objective(const Eigen::VectorXd& b_vec, const ChannelSet& ch,
                             const ArchSpec& spec, double z0 = kDefaultZ0) {
    return gain_objective(b_vec, ch, transform_matrix(spec), z0);
}

// analytic gradient from d theta = -j z0 (I + j z0 B)^{-1} dB (I + theta);
// off-diagonal variables pick up both symmetric entries of dB
inline double gain_value_and_gradient(const Eigen::VectorXd& b_vec, const ChannelSet& ch,
                                      const StructureMaps& maps, double z0,
                                      Eigen::VectorXd& grad) {
    const Eigen::Index n = maps.n();
    const Eigen::MatrixXd b = expand(b_vec, maps);

    Eigen::MatrixXcd m = std::complex<double>(0, z0) * b.cast<std::complex<double>>();
    m.diagonal().array() += 1.0;
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    const Eigen::MatrixXcd t = lu.inverse();            // (I + j z0 B)^{-1}
    const Eigen::MatrixXcd theta = 2.0 * t - Eigen::MatrixXcd::Identity(n, n);

    const Eigen::MatrixXcd g = ch.h.adjoint() * theta * ch.e; // K x L
    const double f = g.squaredNorm();

    // df = Re tr(K dB), K = -4 j z0 T (E G^H H^H) T
    const Eigen::MatrixXcd k_mat = std::complex<double>(0, -4.0 * z0) *
                                   (t * (ch.e * g.adjoint() * ch.h.adjoint()) * t);
    grad.resize(maps.n_b);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            if (maps.indicator(i, j) == 0)
                continue;
            const Eigen::Index var = maps.counting(i, j) - 1;
            grad(var) = (i == j) ? k_mat(i, i).real()
                                 : (k_mat(i, j) + k_mat(j, i)).real();
        }
    return f;
}

inline Eigen::VectorXd gain_gradient(const Eigen::VectorXd& b_vec, const ChannelSet& ch,
                                     const StructureMaps& maps, double z0 = kDefaultZ0) {
    Eigen::VectorXd grad;
    gain_value_and_gradient(b_vec, ch, maps, z0, grad);
    return grad;
}

inline Eigen::VectorXd gain_gradient(const Eigen::VectorXd& b_vec, const ChannelSet& ch,
                                     const ArchSpec& spec, double z0 = kDefaultZ0) {
    return gain_gradient(b_vec, ch, transform_matrix(spec), z0);
}

struct QuasiNewtonOptions {
    int max_iterations = 500;
    int history = 10;
    double c1 = 1e-4;
    double c2 = 0.9;
    double grad_tol = 1e-6;
};

struct QuasiNewtonGain {
    Eigen::VectorXd b;
    double gain = 0.0;
    std::vector<double> trace; // gain per accepted iterate, non-decreasing
    int iterations = 0;
    bool converged = false;
    bool line_search_failed = false;
};

// limited-memory quasi-Newton ascent on the gain objective, typically
// warm-started from ub_sosup. The objective is normalized by its starting
// value before optimization: raw channel gains sit around 1e-12 under the
// distance-power law, which would defeat any absolute gradient test.
inline QuasiNewtonGain quasi_newton_gain(const ChannelSet& ch, const ArchSpec& spec,
                                         const Eigen::VectorXd& b_init, double z0 = kDefaultZ0,
                                         const QuasiNewtonOptions& opts = {}) {
    const StructureMaps maps = transform_matrix(spec);
    if (b_init.size() != maps.n_b)
        throw DimensionMismatch("quasi_newton_gain: b_init has wrong length");

    const double f0 = gain_objective(b_init, ch, maps, z0);
    const double ref =
        std::max({f0, 1e-8 * ch.h.squaredNorm() * ch.e.squaredNorm(), 1e-300});
    const double scale = 1.0 / ref;

    LbfgsOptions lopts;
    lopts.history = opts.history;
    lopts.max_iterations = opts.max_iterations;
    lopts.c1 = opts.c1;
    lopts.c2 = opts.c2;
    lopts.grad_tol = opts.grad_tol;

    auto negated = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
        const double f = gain_value_and_gradient(x, ch, maps, z0, grad);
        grad *= -scale;
        return -f * scale;
    };
    const LbfgsResult lr = lbfgs_minimize(negated, b_init, lopts);

    QuasiNewtonGain out;
    out.b = lr.x;
    out.gain = -lr.f / scale;
    out.trace.reserve(lr.trace.size());
    for (double v : lr.trace)
        out.trace.push_back(-v / scale);
    out.iterations = lr.iterations;
    out.converged = lr.converged;
    out.line_search_failed = lr.line_search_failed;
    return out;
}

// convenience: ub_sosup start followed by quasi-Newton refinement
inline QuasiNewtonGain sosup_quasi_newton(const ChannelSet& ch, const ArchSpec& spec,
                                          double z0 = kDefaultZ0,
                                          const QuasiNewtonOptions& opts = {}) {
    const GainDesign start = ub_sosup(ch, spec, z0);
    const Eigen::VectorXd b0 = vec_i(start.projection.b.b, spec);
    return quasi_newton_gain(ch, spec, b0, z0, opts);
}

} // namespace bdris
