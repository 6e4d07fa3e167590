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
#include <chrono>

#include "bdris/linalg.hpp"
#include "bdris/sosup.hpp"
#include "bdris/takagi.hpp"
#include "test_helpers.hpp"

using namespace bdris;

TEST_SUITE("sosup") {

TEST_CASE("lower_bound evaluations") {
    CHECK(lower_bound(Eigen::Vector3d::Ones()) == 0.0);
    Eigen::VectorXd two(1);
    two << 2.0;
    CHECK(lower_bound(two) == 1.0);
    Eigen::Vector2d frac(0.5, 1.5);
    CHECK(lower_bound(frac) == doctest::Approx(0.5));
}

TEST_CASE("identity input is a fixed point on the fully-connected set") {
    const auto res = project(Eigen::MatrixXcd::Identity(6, 6).eval(), arch_fully(6));
    CHECK(res.b.b.norm() < 1e-10);
    CHECK((res.theta.theta - Eigen::MatrixXcd::Identity(6, 6)).norm() < 1e-10);
    CHECK(res.achieved == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(res.lower_bound == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(res.degenerate);
}

TEST_CASE("feasible scattering matrices are recovered across the catalog") {
    SplitMix64 rng(41);
    for (const ArchSpec& spec : bdris_test::catalog(8)) {
        for (int trial = 0; trial < 10; ++trial) {
            const Eigen::MatrixXd b0 = bdris_test::random_masked_susceptance(rng, spec);
            const Eigen::MatrixXcd theta0 = scattering_of(b0);
            const auto res = project(theta0, spec);
            CHECK((res.theta.theta - theta0).norm() < 1e-6);
            CHECK(res.ls_residual < 1e-8);
            CHECK(res.achieved <= 1e-10);
        }
    }
}

TEST_CASE("projection of arbitrary matrices lands on the feasible set") {
    SplitMix64 rng(43);
    for (const ArchSpec& spec : bdris_test::catalog(16)) {
        for (int trial = 0; trial < 20; ++trial) {
            const Eigen::MatrixXcd x = bdris_test::random_complex(rng, 16, 16);
            const auto res = project(x, spec);
            CHECK(obeys_mask(res.b.b, spec));
            CHECK(validate_scattering(res.theta.theta, 1e-8).pass);
            CHECK(res.achieved >= res.lower_bound - 1e-6 * std::max(1.0, res.lower_bound));
        }
    }
}

TEST_CASE("bound is met with equality when the linear system is consistent") {
    SplitMix64 rng(47);
    // full-rank symmetric inputs on the fully-connected set: the system
    // B C = D is always solvable, so achieved == lower_bound
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::MatrixXcd x = bdris_test::random_complex_symmetric(rng, 8);
        const auto res = project(x, arch_fully(8));
        CHECK(res.ls_residual < 1e-8);
        CHECK(std::abs(res.achieved - res.lower_bound) <
              1e-6 * std::max(1.0, res.lower_bound));
    }
}

TEST_CASE("larger feasible sets project no farther") {
    SplitMix64 rng(53);
    const int n = 12;
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::MatrixXcd x = bdris_test::random_complex(rng, n, n);
        double prev = std::numeric_limits<double>::infinity();
        for (int q : {1, 3, 5, 7}) {
            const auto res = project(x, arch_stem(n, q));
            CHECK(res.achieved <= prev + 1e-6);
            prev = res.achieved;
        }
    }
}

TEST_CASE("cluster projection equals independent per-block stem projections") {
    SplitMix64 rng(59);
    const ArchSpec spec = arch_cluster(8, 2, 2);
    const Eigen::MatrixXcd x = bdris_test::random_complex(rng, 8, 8);
    const auto whole = project(x, spec);
    const ArchSpec blk = arch_stem(4, 2);
    const auto top = project(x.topLeftCorner(4, 4).eval(), blk);
    const auto bottom = project(x.bottomRightCorner(4, 4).eval(), blk);
    CHECK((whole.b.b.topLeftCorner(4, 4) - top.b.b).norm() < 1e-12);
    CHECK((whole.b.b.bottomRightCorner(4, 4) - bottom.b.b).norm() < 1e-12);
    CHECK(whole.lower_bound ==
          doctest::Approx(top.lower_bound + bottom.lower_bound).epsilon(1e-12));
}

TEST_CASE("antisymmetric input degenerates to the identity reflection") {
    SplitMix64 rng(61);
    Eigen::MatrixXcd x = bdris_test::random_complex(rng, 6, 6);
    x = (x - x.transpose()).eval() / 2.0;
    const auto res = project(x, arch_stem(6, 2));
    CHECK(res.degenerate);
    CHECK(res.b.b.norm() == 0.0);
    CHECK((res.theta.theta - Eigen::MatrixXcd::Identity(6, 6)).norm() < 1e-12);
}

TEST_CASE("doubling the stem count scales the solve by a bounded factor") {
    // the least-squares solve dominates; growth should stay polynomial,
    // nowhere near pathological
    SplitMix64 rng(63);
    const int n = 32;
    const Eigen::MatrixXcd x = bdris_test::random_complex(rng, n, n);
    auto best_of = [&](int q) {
        double best = std::numeric_limits<double>::infinity();
        for (int rep = 0; rep < 3; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            (void)project(x, arch_stem(n, q));
            const auto t1 = std::chrono::steady_clock::now();
            best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
        }
        return best;
    };
    const double t2 = best_of(2);
    const double t4 = best_of(4);
    CHECK(t4 <= 64.0 * std::max(t2, 1e-4)); // cubic-in-q would predict ~8x
}

TEST_CASE("build_linear_system dimensions and consistency") {
    SplitMix64 rng(67);
    const ArchSpec spec = arch_stem(16, 3);
    const StructureMaps maps = transform_matrix(spec);

    // empty rank: empty system, least squares falls back to zero
    const LinearSystem empty = build_linear_system(Eigen::MatrixXcd(16, 0), maps, kDefaultZ0);
    CHECK(empty.a.rows() == 0);
    CHECK(empty.a.cols() == circuit_complexity(spec));
    const auto sol0 = least_squares(empty.a, empty.z);
    CHECK(sol0.x.norm() == 0.0);

    // generic rank-2 factor: n R rows, n_b columns
    const Eigen::MatrixXcd q2 = bdris_test::random_unitary(rng, 16).leftCols(2);
    const LinearSystem sys = build_linear_system(q2, maps, kDefaultZ0);
    CHECK(sys.a.rows() == 32);
    CHECK(sys.a.cols() == circuit_complexity(spec));

    // feasible theta: its Takagi factors make the system consistent
    const Eigen::MatrixXd b0 = bdris_test::random_masked_susceptance(rng, spec);
    const Eigen::MatrixXcd theta0 = scattering_of(b0);
    const auto tf = takagi(theta0);
    const LinearSystem feas = build_linear_system(tf.q_r(), maps, kDefaultZ0);
    const auto sol = least_squares(feas.a, feas.z);
    CHECK(sol.residual < 1e-8);
}

TEST_CASE("assembled system equals the explicit kronecker form") {
    SplitMix64 rng(71);
    const ArchSpec spec = arch_stem(5, 2);
    const StructureMaps maps = transform_matrix(spec);
    const Eigen::MatrixXcd q_r = bdris_test::random_unitary(rng, 5).leftCols(3);
    const LinearSystem sys = build_linear_system(q_r, maps, kDefaultZ0);

    const Eigen::MatrixXcd c = std::complex<double>(0, kDefaultZ0) * (q_r.conjugate() + q_r);
    const Eigen::MatrixXd a_explicit =
        kron(c.imag().transpose().eval(), Eigen::MatrixXd::Identity(5, 5)) * maps.dense();
    CHECK((sys.a - a_explicit).norm() < 1e-12);
    const Eigen::MatrixXd im_d = (q_r.conjugate() - q_r).imag();
    CHECK((sys.z - im_d.reshaped()).norm() < 1e-12);
}

} // TEST_SUITE
