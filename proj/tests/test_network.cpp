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
#include <complex>

#include "bdris/network.hpp"
#include "test_helpers.hpp"

using namespace bdris;
using Complex = std::complex<double>;

TEST_SUITE("network") {

TEST_CASE("zero susceptance reflects the identity") {
    const auto s = scattering_from_susceptance(
        make_susceptance(Eigen::MatrixXd::Zero(4, 4), arch_fully(4)));
    CHECK((s.theta - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-15);
}

TEST_CASE("scalar evaluation") {
    Eigen::MatrixXd b(1, 1);
    b(0, 0) = 1.0;
    const Eigen::MatrixXcd theta = scattering_of(b, 1.0); // z0 B = 1
    CHECK(std::abs(theta(0, 0) - Complex(0, -1)) < 1e-15);
}

TEST_CASE("scattering is symmetric unitary for every catalog mask") {
    SplitMix64 rng(23);
    for (const ArchSpec& spec : bdris_test::catalog(8)) {
        for (int trial = 0; trial < 100; ++trial) {
            const Eigen::MatrixXd b = bdris_test::random_masked_susceptance(rng, spec);
            const auto rep = validate_scattering(scattering_of(b), 1e-10);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("block-diagonal masks yield block-diagonal scattering") {
    SplitMix64 rng(29);
    for (const ArchSpec& spec :
         {arch_group(8, 2), arch_forest(8, 2), arch_cluster(8, 2, 2)}) {
        const Eigen::MatrixXd b = bdris_test::random_masked_susceptance(rng, spec);
        const Eigen::MatrixXcd theta = scattering_of(b);
        CHECK(theta.topRightCorner(4, 4).norm() < 1e-12);
        CHECK(theta.bottomLeftCorner(4, 4).norm() < 1e-12);
    }
}

TEST_CASE("susceptance recovery inverts the map") {
    CHECK(susceptance_from_scattering(Eigen::MatrixXcd::Identity(3, 3).eval()).norm() <
          1e-15);

    Eigen::MatrixXcd minus_j(1, 1);
    minus_j(0, 0) = Complex(0, -1);
    const Eigen::MatrixXd b = susceptance_from_scattering(minus_j, 1.0);
    CHECK(b(0, 0) == doctest::Approx(1.0).epsilon(1e-12));

    SplitMix64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::MatrixXd b0 = bdris_test::random_masked_susceptance(rng, arch_fully(6));
        const Eigen::MatrixXd b1 = susceptance_from_scattering(scattering_of(b0));
        CHECK((b1 - b0).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("an eigenvalue at -1 is rejected") {
    Eigen::MatrixXcd theta = Eigen::MatrixXcd::Identity(3, 3);
    theta(2, 2) = -1.0;
    CHECK_THROWS_AS((void)susceptance_from_scattering(theta), SingularAtMinusOne);
}

TEST_CASE("validate_scattering report") {
    const auto id = validate_scattering(Eigen::MatrixXcd::Identity(5, 5).eval(), 1e-9);
    CHECK(id.pass);
    CHECK(id.unitarity_defect == 0.0);
    CHECK(id.symmetry_defect == 0.0);

    Eigen::MatrixXcd phases = Eigen::MatrixXcd::Zero(2, 2);
    phases(0, 0) = std::polar(1.0, std::numbers::pi / 4);
    phases(1, 1) = std::polar(1.0, std::numbers::pi / 3);
    CHECK(validate_scattering(phases, 1e-12).pass);

    SplitMix64 rng(37);
    const Eigen::MatrixXcd junk = bdris_test::random_complex(rng, 4, 4);
    CHECK_FALSE(validate_scattering(junk, 1e-9).pass);
}

TEST_CASE("make_susceptance enforces the mask") {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(3, 3);
    b(1, 2) = b(2, 1) = 0.5;
    CHECK_THROWS_AS((void)make_susceptance(b, arch_stem(3, 1)), MaskViolation);
    CHECK_NOTHROW((void)make_susceptance(b, arch_fully(3)));
}

} // TEST_SUITE
