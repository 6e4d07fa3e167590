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

#include "bdris/beamform.hpp"
#include "test_helpers.hpp"

using namespace bdris;

namespace {

ChannelSet unit_channels(Eigen::MatrixXcd e, Eigen::MatrixXcd h, double noise) {
    ChannelSet ch;
    ch.e = std::move(e);
    ch.h = std::move(h);
    ch.noise_power = noise;
    return ch;
}

} // namespace

TEST_SUITE("beamform") {

TEST_CASE("zero precoder earns zero rate") {
    const ChannelSet ch = gen_channels(8, 4, 3, 1);
    Precoder pre{Eigen::MatrixXcd::Zero(4, 3), 1.0};
    const Eigen::VectorXd r = rates(ch, Eigen::MatrixXcd::Identity(8, 8), pre);
    CHECK(r.norm() == 0.0);
}

TEST_CASE("single user rate has no interference term") {
    SplitMix64 rng(3);
    const ChannelSet ch = gen_channels(6, 4, 1, 2);
    Precoder pre{bdris_test::random_complex(rng, 4, 1), 1.0};
    const Eigen::MatrixXcd theta = bdris_test::random_unitary(rng, 6);
    const Eigen::RowVectorXcd f = ch.h.adjoint() * theta * ch.e;
    const double expected =
        std::log2(1.0 + std::norm((f * pre.w.col(0))(0)) / ch.noise_power);
    CHECK(rates(ch, theta, pre)(0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("orthogonal two-user fixture gives one bit each") {
    // f_1 = (1, 0), f_2 = (0, 1), w_k = e_k, sigma^2 = 1
    ChannelSet ch = unit_channels(Eigen::MatrixXcd::Identity(2, 2),
                                  Eigen::MatrixXcd::Identity(2, 2), 1.0);
    Precoder pre{Eigen::MatrixXcd::Identity(2, 2), 2.0};
    const Eigen::VectorXd r = rates(ch, Eigen::MatrixXcd::Identity(2, 2), pre);
    CHECK(r(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("utility evaluations") {
    Eigen::VectorXd r(2), w(2);
    r << 1, 2;
    w << 1, 1;
    Precoder pre{Eigen::MatrixXcd::Zero(2, 2), 1.0};
    auto rep = utilities(r, w, pre, 1.0, 1.0);
    CHECK(rep.wsr == doctest::Approx(3.0));
    CHECK(rep.mmf == doctest::Approx(1.0));

    rep = utilities(Eigen::VectorXd::Zero(2), w, pre, 1.0, 1.0);
    CHECK(rep.wsr == 0.0);
    CHECK(rep.ee == 0.0);

    Eigen::MatrixXcd w_mat = Eigen::MatrixXcd::Zero(3, 2);
    w_mat(0, 0) = std::sqrt(3.0); // ||W||^2 = 3
    r << 1, 2;
    rep = utilities(r, w, Precoder{w_mat, 3.0}, 1.0, 0.0);
    CHECK(rep.ee == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single-user fp converges to the matched filter optimum") {
    for (int t = 0; t < 10; ++t) {
        const ChannelSet ch = gen_channels(8, 4, 1, SplitMix64::stream_seed(21, t));
        const Eigen::MatrixXcd theta = Eigen::MatrixXcd::Identity(8, 8);
        const double p_t = 1.0;
        const Precoder pre = fp_wsr_precoder(ch, theta, p_t, Eigen::VectorXd::Ones(1));
        const Eigen::RowVectorXcd f = ch.h.adjoint() * theta * ch.e;
        const double wsr_opt = std::log2(1.0 + p_t * f.squaredNorm() / ch.noise_power);
        const double wsr = rates(ch, theta, pre)(0);
        CHECK(std::abs(wsr - wsr_opt) < 1e-4 * wsr_opt);
        CHECK(pre.w.squaredNorm() <= p_t * (1 + 1e-9));
    }
}

TEST_CASE("fp iterates are monotone and power feasible") {
    for (int t = 0; t < 50; ++t) {
        const ChannelSet ch = gen_channels(8, 3, 3, SplitMix64::stream_seed(33, t));
        FpDiagnostics diag;
        const double p_t = 1.0;
        (void)fp_wsr_precoder(ch, Eigen::MatrixXcd::Identity(8, 8), p_t,
                              Eigen::VectorXd::Ones(3), {}, &diag);
        REQUIRE(!diag.wsr_trace.empty());
        for (std::size_t i = 1; i < diag.wsr_trace.size(); ++i)
            CHECK(diag.wsr_trace[i] >= diag.wsr_trace[i - 1] - 1e-9);
        for (double p : diag.power_trace)
            CHECK(p <= p_t * (1 + 1e-9));
    }
}

TEST_CASE("weight scaling leaves the rate vector unchanged") {
    const ChannelSet ch = gen_channels(8, 4, 3, 55);
    const Eigen::MatrixXcd theta = Eigen::MatrixXcd::Identity(8, 8);
    const Precoder a = fp_wsr_precoder(ch, theta, 1.0, Eigen::VectorXd::Ones(3));
    const Precoder b = fp_wsr_precoder(ch, theta, 1.0, 3.0 * Eigen::VectorXd::Ones(3));
    const Eigen::VectorXd ra = rates(ch, theta, a);
    const Eigen::VectorXd rb = rates(ch, theta, b);
    CHECK((ra - rb).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("two-stage: refined stage 1 never loses channel gain") {
    for (int t = 0; t < 5; ++t) {
        const ChannelSet ch = gen_channels(8, 2, 2, SplitMix64::stream_seed(77, t));
        const ArchSpec spec = arch_stem(8, 1);
        const auto ub = two_stage(ch, spec, kDefaultZ0, Stage1Method::UbSosup, 1.0,
                                  Eigen::VectorXd::Ones(2));
        const auto qn = two_stage(ch, spec, kDefaultZ0, Stage1Method::SosupQuasiNewton, 1.0,
                                  Eigen::VectorXd::Ones(2));
        CHECK(qn.stage1_gain >= ub.stage1_gain * (1 - 1e-9));
    }
}

TEST_CASE("two-stage: heuristic initializer is dimension consistent") {
    const ChannelSet ch = gen_channels(8, 3, 2, 88);
    const auto ts = two_stage(ch, arch_stem(8, 3), kDefaultZ0, Stage1Method::HeuristicSosup,
                              1.0, Eigen::VectorXd::Ones(2));
    CHECK(ts.report.rates.size() == 2);
    CHECK(validate_scattering(ts.theta.theta, 1e-8).pass);
    CHECK(ts.precoder.w.squaredNorm() <= 1.0 * (1 + 1e-9));
}

TEST_CASE("two-stage: stem with q = 2M-1 tracks fully connected in mean wsr") {
    double wsr_stem = 0.0, wsr_fully = 0.0;
    const int seeds = 20, m = 2;
    for (int t = 0; t < seeds; ++t) {
        const ChannelSet ch = gen_channels(16, 2, 2, SplitMix64::stream_seed(99, t));
        const Eigen::VectorXd w = Eigen::VectorXd::Ones(m);
        wsr_stem += two_stage(ch, arch_stem(16, 2 * m - 1), kDefaultZ0,
                              Stage1Method::UbSosup, 1.0, w)
                        .report.wsr;
        wsr_fully +=
            two_stage(ch, arch_fully(16), kDefaultZ0, Stage1Method::UbSosup, 1.0, w)
                .report.wsr;
    }
    CHECK(std::abs(wsr_stem - wsr_fully) < 0.02 * wsr_fully);
}

TEST_CASE("two-stage: single-connected falls below fully connected") {
    double wsr_single = 0.0, wsr_fully = 0.0;
    for (int t = 0; t < 50; ++t) {
        const ChannelSet ch = gen_channels(8, 2, 2, SplitMix64::stream_seed(111, t));
        const Eigen::VectorXd w = Eigen::VectorXd::Ones(2);
        wsr_single +=
            two_stage(ch, arch_single(8), kDefaultZ0, Stage1Method::UbSosup, 1.0, w)
                .report.wsr;
        wsr_fully +=
            two_stage(ch, arch_fully(8), kDefaultZ0, Stage1Method::UbSosup, 1.0, w)
                .report.wsr;
    }
    CHECK(wsr_single < wsr_fully);
}

} // TEST_SUITE
