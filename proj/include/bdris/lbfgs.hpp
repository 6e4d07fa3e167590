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
#include <cmath>
#include <deque>
#include <utility>
#include <vector>

namespace bdris {

struct LbfgsOptions {
    int history = 10;
    int max_iterations = 500;
    double c1 = 1e-4; // sufficient decrease
    double c2 = 0.9;  // curvature
    double grad_tol = 1e-6; // sup-norm, relative to max(1, |f|)
    int max_line_search = 40;
};

struct LbfgsResult {
    Eigen::VectorXd x;
    double f = 0.0;
    Eigen::VectorXd grad;
    int iterations = 0;
    bool converged = false;
    bool line_search_failed = false;
    std::vector<double> trace; // f at the start and after each accepted step
};

// limited-memory BFGS minimizer with a strong-Wolfe bracketing line search
// (Nocedal & Wright, Algorithms 3.5/3.6); fn evaluates f and writes the
// gradient in place
template <typename Fn>
LbfgsResult lbfgs_minimize(Fn&& fn, Eigen::VectorXd x0, const LbfgsOptions& opts = {}) {
    const Eigen::Index dim = x0.size();
    LbfgsResult res;
    res.x = std::move(x0);
    res.grad.resize(dim);
    res.f = fn(res.x, res.grad);
    res.trace.push_back(res.f);
    if (dim == 0) {
        res.converged = true;
        return res;
    }

    std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> mem; // (s, y)
    Eigen::VectorXd direction(dim), x_new(dim), g_new(dim);
    std::vector<double> alpha_buf;

    auto converged_at = [&](double f, const Eigen::VectorXd& g) {
        return g.cwiseAbs().maxCoeff() < opts.grad_tol * std::max(1.0, std::abs(f));
    };

    if (converged_at(res.f, res.grad)) {
        res.converged = true;
        return res;
    }

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        // two-loop recursion
        direction = -res.grad;
        alpha_buf.assign(mem.size(), 0.0);
        for (std::size_t i = mem.size(); i-- > 0;) {
            const auto& [s, y] = mem[i];
            const double rho = 1.0 / y.dot(s);
            alpha_buf[i] = rho * s.dot(direction);
            direction -= alpha_buf[i] * y;
        }
        if (!mem.empty()) {
            const auto& [s, y] = mem.back();
            direction *= s.dot(y) / y.squaredNorm();
        }
        for (std::size_t i = 0; i < mem.size(); ++i) {
            const auto& [s, y] = mem[i];
            const double rho = 1.0 / y.dot(s);
            const double beta = rho * y.dot(direction);
            direction += (alpha_buf[i] - beta) * s;
        }

        double dphi0 = res.grad.dot(direction);
        if (dphi0 >= 0) { // not a descent direction; restart from steepest descent
            mem.clear();
            direction = -res.grad;
            dphi0 = res.grad.dot(direction);
        }

        const double phi0 = res.f;
        double alpha = mem.empty() ? 1.0 / std::max(1.0, res.grad.cwiseAbs().maxCoeff()) : 1.0;

        auto eval = [&](double a, double& phi, double& dphi) {
            x_new = res.x + a * direction;
            phi = fn(x_new, g_new);
            dphi = g_new.dot(direction);
        };

        // bracketing phase
        double lo = 0.0, hi = 0.0, phi_lo = phi0;
        double phi = 0.0, dphi = 0.0;
        double alpha_prev = 0.0, phi_prev = phi0;
        bool have_bracket = false, accepted = false, failed = false;
        for (int ls = 0; ls < opts.max_line_search; ++ls) {
            eval(alpha, phi, dphi);
            if (phi > phi0 + opts.c1 * alpha * dphi0 || (ls > 0 && phi >= phi_prev)) {
                lo = alpha_prev;
                phi_lo = phi_prev;
                hi = alpha;
                have_bracket = true;
                break;
            }
            if (std::abs(dphi) <= -opts.c2 * dphi0) {
                accepted = true;
                break;
            }
            if (dphi >= 0) {
                lo = alpha;
                phi_lo = phi;
                hi = alpha_prev;
                have_bracket = true;
                break;
            }
            alpha_prev = alpha;
            phi_prev = phi;
            alpha *= 2.0;
        }
        if (!accepted && have_bracket) {
            // zoom by bisection
            for (int zi = 0; zi < opts.max_line_search; ++zi) {
                alpha = 0.5 * (lo + hi);
                eval(alpha, phi, dphi);
                if (phi > phi0 + opts.c1 * alpha * dphi0 || phi >= phi_lo) {
                    hi = alpha;
                } else {
                    if (std::abs(dphi) <= -opts.c2 * dphi0) {
                        accepted = true;
                        break;
                    }
                    if (dphi * (hi - lo) >= 0)
                        hi = lo;
                    lo = alpha;
                    phi_lo = phi;
                }
                if (std::abs(hi - lo) < 1e-16 * std::max(1.0, std::abs(lo)))
                    break;
            }
            if (!accepted && phi_lo < phi0 && lo > 0) {
                // fall back to the best sufficiently-decreasing point seen
                eval(lo, phi, dphi);
                accepted = true;
                failed = true;
            }
        }
        if (!accepted) {
            res.line_search_failed = true;
            break;
        }

        const Eigen::VectorXd s = x_new - res.x;
        const Eigen::VectorXd y = g_new - res.grad;
        res.x.swap(x_new);
        res.grad.swap(g_new);
        res.f = phi;
        res.trace.push_back(res.f);
        res.iterations = iter + 1;
        if (failed)
            res.line_search_failed = true;

        if (converged_at(res.f, res.grad)) {
            res.converged = true;
            break;
        }
        if (y.dot(s) > 1e-10 * s.norm() * y.norm()) {
            mem.emplace_back(s, y);
            if (static_cast<int>(mem.size()) > opts.history)
                mem.pop_front();
        }
        if (res.line_search_failed)
            break;
    }
    return res;
}

} // namespace bdris
