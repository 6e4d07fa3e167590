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

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "bdris/gain_opt.hpp"
#include "test_helpers.hpp"

using namespace bdris;

namespace {

Eigen::VectorXd fd_gradient(const Eigen::VectorXd& b, const ChannelSet& ch,
                            const StructureMaps& maps, double z0) {
    Eigen::VectorXd g(b.size());
    for (Eigen::Index i = 0; i < b.size(); ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(b(i)));
        Eigen::VectorXd bp = b, bm = b;
        bp(i) += h;
        bm(i) -= h;
        g(i) = (gain_objective(bp, ch, maps, z0) - gain_objective(bm, ch, maps, z0)) / (2 * h);
    }
    return g;
}

} // namespace

TEST_SUITE("gain_opt") {

TEST_CASE("zero susceptance reproduces the direct cascade gain") {
    const ChannelSet ch = gen_channels(8, 3, 2, 4);
    const ArchSpec spec = arch_stem(8, 2);
    const Eigen::VectorXd b0 = Eigen::VectorXd::Zero(circuit_complexity(spec));
    CHECK(gain_objective(b0, ch, spec) ==
          doctest::Approx((ch.h.adjoint() * ch.e).squaredNorm()).epsilon(1e-12));
}

TEST_CASE("analytic gradient matches central differences across the catalog") {
    SplitMix64 rng(101);
    int instance = 0;
    for (const ArchSpec& spec : bdris_test::catalog(8)) {
        const StructureMaps maps = transform_matrix(spec);
        for (int trial = 0; trial < 3; ++trial, ++instance) {
            const ChannelSet ch = gen_channels(8, 3, 2, SplitMix64::stream_seed(50, instance));
            Eigen::VectorXd b(maps.n_b);
            for (Eigen::Index i = 0; i < b.size(); ++i)
                b(i) = rng.normal() / kDefaultZ0;
            const Eigen::VectorXd g_an = gain_gradient(b, ch, maps);
            const Eigen::VectorXd g_fd = fd_gradient(b, ch, maps, kDefaultZ0);
            CHECK((g_an - g_fd).norm() < 1e-5 * std::max(g_fd.norm(), 1e-300));
        }
    }
}

TEST_CASE("diagonal spec gradient matches the scalar phase-derivative chain") {
    // single-connected: theta = diag(e^{j phi_i}), phi = -2 atan(z0 b_i)
    const int n = 6;
    const ArchSpec spec = arch_single(n);
    const StructureMaps maps = transform_matrix(spec);
    const ChannelSet ch = gen_channels(n, 3, 2, 9);
    SplitMix64 rng(103);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i)
        b(i) = rng.normal() / kDefaultZ0;

    const Eigen::VectorXd g_an = gain_gradient(b, ch, maps);
    for (int i = 0; i < n; ++i) {
        // dg/dphi_i = 2 Re( j theta_ii [E (H^H theta E)^H H^H]_{ii} )
        Eigen::VectorXcd phases(n);
        for (int t = 0; t < n; ++t)
            phases(t) = std::polar(1.0, -2.0 * std::atan(kDefaultZ0 * b(t)));
        const Eigen::MatrixXcd theta = phases.asDiagonal();
        const Eigen::MatrixXcd w = ch.e * (ch.h.adjoint() * theta * ch.e).adjoint() * ch.h.adjoint();
        const double dg_dphi = 2.0 * (std::complex<double>(0, 1) * phases(i) * w(i, i)).real();
        const double dphi_db = -2.0 * kDefaultZ0 / (1.0 + std::pow(kDefaultZ0 * b(i), 2));
        CHECK(g_an(i) == doctest::Approx(dg_dphi * dphi_db).epsilon(1e-8));
    }
}

TEST_CASE("ub_sosup attains the bound in the single-stream case") {
    for (int t = 0; t < 10; ++t) {
        const ChannelSet ch = gen_channels(16, 1, 1, SplitMix64::stream_seed(7, t));
        const GainDesign gd = ub_sosup(ch, arch_fully(16));
        CHECK(std::abs(gd.gain - gd.ub_value) < 1e-6 * gd.ub_value);
        CHECK(gd.projection.ls_residual < 1e-6);
    }
}

TEST_CASE("quasi-newton stays put at a stationary start") {
    const ChannelSet ch = gen_channels(12, 1, 1, 5150);
    const ArchSpec spec = arch_fully(12);
    const GainDesign gd = ub_sosup(ch, spec);
    REQUIRE(std::abs(gd.gain - gd.ub_value) < 1e-8 * gd.ub_value);
    const Eigen::VectorXd b0 = vec_i(gd.projection.b.b, spec);
    const QuasiNewtonGain qn = quasi_newton_gain(ch, spec, b0);
    CHECK(qn.iterations <= 2);
    CHECK(std::abs(qn.gain - gd.gain) <= 1e-8 * std::max(1.0, gd.gain));
}

TEST_CASE("gain trace is non-decreasing") {
    const ChannelSet ch = gen_channels(10, 4, 4, 31337);
    const QuasiNewtonGain qn = sosup_quasi_newton(ch, arch_stem(10, 1));
    REQUIRE(qn.trace.size() >= 2);
    for (std::size_t i = 1; i < qn.trace.size(); ++i)
        CHECK(qn.trace[i] >= qn.trace[i - 1] * (1.0 - 1e-12));
}

TEST_CASE("refinement dominates the closed-form start") {
    for (int t = 0; t < 20; ++t) {
        const ChannelSet ch = gen_channels(16, 4, 4, SplitMix64::stream_seed(11, t));
        const ArchSpec spec = arch_stem(16, 1);
        const GainDesign gd = ub_sosup(ch, spec);
        const QuasiNewtonGain qn = sosup_quasi_newton(ch, spec);
        CHECK(qn.gain >= gd.gain * (1.0 - 1e-9));
    }
}

} // TEST_SUITE
