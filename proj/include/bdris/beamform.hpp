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

#include "bdris/channel.hpp"
#include "bdris/errors.hpp"
#include "bdris/gain_opt.hpp"
#include "bdris/network.hpp"
#include "bdris/sosup.hpp"

namespace bdris {

struct Precoder {
    Eigen::MatrixXcd w; // L x K, columns w_k
    double p_t = 1.0;   // transmit power budget, watts
};

struct UtilityReport {
    Eigen::VectorXd rates; // bits/s/Hz per user
    double wsr = 0.0;
    double mmf = 0.0;
    double ee = 0.0;
    Eigen::VectorXd weights;
    double eta = 1.0;
    double p_cir = 1.0;
};

// cascaded channel rows f_k^H = h_k^H theta E stacked into a K x L matrix
inline Eigen::MatrixXcd effective_channel(const ChannelSet& ch, const Eigen::MatrixXcd& theta) {
    if (theta.rows() != ch.n() || theta.cols() != ch.n())
        throw DimensionMismatch("effective_channel: theta size mismatch");
    return ch.h.adjoint() * theta * ch.e;
}

// R_k = log2(1 + |f_k^H w_k|^2 / (sum_{j != k} |f_k^H w_j|^2 + sigma_k^2))
inline Eigen::VectorXd rates(const ChannelSet& ch, const Eigen::MatrixXcd& theta,
                             const Precoder& pre) {
    if (pre.w.rows() != ch.l() || pre.w.cols() != ch.k())
        throw DimensionMismatch("rates: precoder must be L x K");
    const Eigen::MatrixXcd f = effective_channel(ch, theta); // K x L
    const Eigen::MatrixXcd rx = f * pre.w;                   // K x K, rx(k, j) = f_k^H w_j
    const Eigen::Index k = ch.k();
    Eigen::VectorXd out(k);
    for (Eigen::Index u = 0; u < k; ++u) {
        const double sig = std::norm(rx(u, u));
        const double interf = rx.row(u).squaredNorm() - sig;
        out(u) = std::log2(1.0 + sig / (interf + ch.noise_power));
    }
    return out;
}

inline UtilityReport utilities(const Eigen::VectorXd& rate_vec, const Eigen::VectorXd& weights,
                               const Precoder& pre, double eta, double p_cir) {
    if (rate_vec.size() != weights.size())
        throw DimensionMismatch("utilities: weights length mismatch");
    if (!(eta > 0) || p_cir < 0)
        throw ConfigError("utilities: eta must be positive and p_cir nonnegative");
    UtilityReport r;
    r.rates = rate_vec;
    r.weights = weights;
    r.eta = eta;
    r.p_cir = p_cir;
    r.wsr = weights.dot(rate_vec);
    r.mmf = rate_vec.size() > 0 ? rate_vec.minCoeff() : 0.0;
    const double denom = pre.w.squaredNorm() / eta + p_cir;
    r.ee = denom > 0 ? r.wsr / denom : 0.0;
    return r;
}

struct FpOptions {
    int max_iterations = 300;
    double rel_tol = 1e-4; // relative WSR change
};

struct FpDiagnostics {
    std::vector<double> wsr_trace;   // after each iteration
    std::vector<double> power_trace; // ||W||_F^2 after each iteration
};

namespace detail {

// spectral water-level solve: w_k = (D + mu I)^{-1} v_k with mu >= 0
// chosen so sum_k ||w_k||^2 <= p_t (complementary slackness)
inline Eigen::MatrixXcd power_constrained_update(const Eigen::MatrixXcd& d,
                                                 const Eigen::MatrixXcd& v, double p_t) {
    const Eigen::Index l = d.rows();
    const Eigen::Index k = v.cols();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d);
    const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    const Eigen::MatrixXcd vt = es.eigenvectors().adjoint() * v; // rotated targets
    const double lam_max = lam.maxCoeff();
    const double drop = std::max(lam_max, 1.0) * 1e-14;

    auto power_at = [&](double mu) {
        double p = 0.0;
        for (Eigen::Index j = 0; j < k; ++j)
            for (Eigen::Index i = 0; i < l; ++i) {
                const double den = lam(i) + mu;
                if (den > drop)
                    p += std::norm(vt(i, j)) / (den * den);
            }
        return p;
    };

    double mu = 0.0;
    if (power_at(0.0) > p_t) {
        double hi = std::sqrt(vt.squaredNorm() / p_t); // power(hi) <= p_t
        double lo = 0.0;
        for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++it) {
            mu = 0.5 * (lo + hi);
            (power_at(mu) > p_t ? lo : hi) = mu;
        }
        mu = hi;
    }

    Eigen::MatrixXcd wt(l, k);
    for (Eigen::Index j = 0; j < k; ++j)
        for (Eigen::Index i = 0; i < l; ++i) {
            const double den = lam(i) + mu;
            wt(i, j) = den > drop ? vt(i, j) / den : 0.0;
        }
    return es.eigenvectors() * wt;
}

} // namespace detail

// WSR precoder by the quadratic-transform fractional-programming
// iteration: alternate the SINR auxiliaries, the quadratic auxiliaries,
// and a closed-form W update with a bisected power multiplier. Each step
// maximizes a surrogate that is tight at the current iterate, so the WSR
// never decreases.
inline Precoder fp_wsr_precoder(const ChannelSet& ch, const Eigen::MatrixXcd& theta, double p_t,
                                const Eigen::VectorXd& weights, const FpOptions& opts = {},
                                FpDiagnostics* diag = nullptr) {
    if (!(p_t > 0))
        throw ConfigError("fp_wsr_precoder: p_t must be positive");
    const Eigen::Index k = ch.k();
    const Eigen::Index l = ch.l();
    if (weights.size() != k)
        throw DimensionMismatch("fp_wsr_precoder: weights length mismatch");
    const Eigen::MatrixXcd f = effective_channel(ch, theta); // K x L
    const double sigma2 = ch.noise_power;

    // matched-filter start, equal power split
    Precoder pre;
    pre.p_t = p_t;
    pre.w.resize(l, k);
    for (Eigen::Index u = 0; u < k; ++u) {
        const double nrm = f.row(u).norm();
        if (nrm > 0)
            pre.w.col(u) = f.row(u).adjoint() * (std::sqrt(p_t / k) / nrm);
        else
            pre.w.col(u).setZero();
    }

    auto wsr_of = [&](const Eigen::MatrixXcd& w) {
        const Eigen::MatrixXcd rx = f * w;
        double wsr = 0.0;
        for (Eigen::Index u = 0; u < k; ++u) {
            const double sig = std::norm(rx(u, u));
            const double interf = rx.row(u).squaredNorm() - sig;
            wsr += weights(u) * std::log2(1.0 + sig / (interf + sigma2));
        }
        return wsr;
    };

    double wsr_prev = wsr_of(pre.w);
    for (int it = 0; it < opts.max_iterations; ++it) {
        const Eigen::MatrixXcd rx = f * pre.w;
        Eigen::VectorXd gamma(k);
        Eigen::VectorXcd y(k);
        for (Eigen::Index u = 0; u < k; ++u) {
            const double sig = std::norm(rx(u, u));
            const double total = rx.row(u).squaredNorm() + sigma2;
            gamma(u) = sig / (total - sig);
            y(u) = std::sqrt(weights(u) * (1.0 + gamma(u))) * rx(u, u) / total;
        }

        Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(l, l);
        Eigen::MatrixXcd v(l, k);
        for (Eigen::Index u = 0; u < k; ++u) {
            d.noalias() += std::norm(y(u)) * (f.row(u).adjoint() * f.row(u));
            v.col(u) = std::sqrt(weights(u) * (1.0 + gamma(u))) * y(u) * f.row(u).adjoint();
        }
        pre.w = detail::power_constrained_update(d, v, p_t);

        const double wsr = wsr_of(pre.w);
        if (diag) {
            diag->wsr_trace.push_back(wsr);
            diag->power_trace.push_back(pre.w.squaredNorm());
        }
        if (std::abs(wsr - wsr_prev) <= opts.rel_tol * std::max(1e-300, std::abs(wsr_prev)))
            break;
        wsr_prev = wsr;
    }
    return pre;
}

enum class Stage1Method { UbSosup, SosupQuasiNewton, HeuristicSosup };

inline const char* to_string(Stage1Method m) {
    switch (m) {
    case Stage1Method::UbSosup:
        return "ub_sosup";
    case Stage1Method::SosupQuasiNewton:
        return "sosup_qn";
    case Stage1Method::HeuristicSosup:
        return "sosup";
    }
    return "?";
}

struct BeamformParams {
    double eta = 1.0;
    double p_cir = 1.0;
};

struct TwoStageResult {
    Susceptance b;
    Scattering theta;
    Precoder precoder;
    UtilityReport report;
    double stage1_gain = 0.0;
};

// Stage 1 fixes theta by channel-gain design; Stage 2 optimizes the
// precoder with theta frozen. The heuristic variant projects
// H Itilde E^H with Itilde the K x L rectangular identity.
inline TwoStageResult two_stage(const ChannelSet& ch, const ArchSpec& spec, double z0,
                                Stage1Method stage1, double p_t, const Eigen::VectorXd& weights,
                                const BeamformParams& params = {}, const FpOptions& fp = {}) {
    TwoStageResult out;
    switch (stage1) {
    case Stage1Method::UbSosup: {
        GainDesign gd = ub_sosup(ch, spec, z0);
        out.b = std::move(gd.projection.b);
        out.theta = std::move(gd.projection.theta);
        break;
    }
    case Stage1Method::SosupQuasiNewton: {
        const QuasiNewtonGain qn = sosup_quasi_newton(ch, spec, z0);
        out.b = make_susceptance(expand(qn.b, spec), spec);
        out.theta = scattering_from_susceptance(out.b, z0);
        break;
    }
    case Stage1Method::HeuristicSosup: {
        Eigen::MatrixXcd rect = Eigen::MatrixXcd::Zero(ch.k(), ch.l());
        rect.diagonal().setOnes();
        const Eigen::MatrixXcd target = ch.h * rect * ch.e.adjoint();
        ProjectionResult pr = project(target, spec, z0);
        out.b = std::move(pr.b);
        out.theta = std::move(pr.theta);
        break;
    }
    }
    out.stage1_gain = sum_gain(ch, out.theta.theta);
    out.precoder = fp_wsr_precoder(ch, out.theta.theta, p_t, weights, fp);
    out.report = utilities(rates(ch, out.theta.theta, out.precoder), weights, out.precoder,
                           params.eta, params.p_cir);
    return out;
}

} // namespace bdris
