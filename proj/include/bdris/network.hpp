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
#include <complex>

#include "bdris/arch.hpp"
#include "bdris/errors.hpp"

namespace bdris {

inline constexpr double kDefaultZ0 = 50.0; // ohms

// real symmetric susceptance matrix B of the reconfigurable network
// (admittance Y = jB), obeying the sparsity mask of its architecture
struct Susceptance {
    Eigen::MatrixXd b;
    ArchSpec spec;
};

inline Susceptance make_susceptance(Eigen::MatrixXd b, const ArchSpec& spec) {
    if (b.rows() != spec.n || b.cols() != spec.n)
        throw DimensionMismatch("make_susceptance: size does not match spec");
    // mirror the upper triangle so symmetry is exact
    for (Eigen::Index i = 1; i < b.rows(); ++i)
        for (Eigen::Index j = 0; j < i; ++j)
            b(i, j) = b(j, i);
    if (!obeys_mask(b, spec))
        throw MaskViolation("make_susceptance: non-zero entry outside mask");
    return Susceptance{std::move(b), spec};
}

struct Scattering {
    Eigen::MatrixXcd theta;
};

// theta = (I + j z0 B)^{-1} (I - j z0 B); symmetric unitary for any real
// symmetric B and z0 > 0
inline Eigen::MatrixXcd scattering_of(const Eigen::MatrixXd& b, double z0 = kDefaultZ0) {
    if (b.rows() != b.cols())
        throw DimensionMismatch("scattering_of: B must be square");
    if (!(z0 > 0))
        throw SingularMatrix("scattering_of: z0 must be positive");
    const std::complex<double> jz0(0.0, z0);
    Eigen::MatrixXcd plus = jz0 * b.cast<std::complex<double>>();
    Eigen::MatrixXcd minus = -plus;
    plus.diagonal().array() += 1.0;
    minus.diagonal().array() += 1.0;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(plus);
    Eigen::MatrixXcd theta = lu.solve(minus);
    if (!theta.allFinite())
        throw SingularMatrix("scattering_of: I + j z0 B is numerically singular");
    return theta;
}

inline Scattering scattering_from_susceptance(const Susceptance& b, double z0 = kDefaultZ0) {
    return Scattering{scattering_of(b.b, z0)};
}

// inverse map B = (-j/z0) (I + theta)^{-1} (I - theta); requires theta to
// keep clear of the eigenvalue -1
inline Eigen::MatrixXd susceptance_from_scattering(const Eigen::MatrixXcd& theta,
                                                   double z0 = kDefaultZ0) {
    if (theta.rows() != theta.cols())
        throw DimensionMismatch("susceptance_from_scattering: theta must be square");
    const Eigen::Index n = theta.rows();
    Eigen::MatrixXcd plus = theta;
    plus.diagonal().array() += 1.0;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(plus);
    if (svd.singularValues()(n - 1) < 1e-10)
        throw SingularAtMinusOne("susceptance_from_scattering: eigenvalue of theta at -1");
    Eigen::MatrixXcd minus = -theta;
    minus.diagonal().array() += 1.0;
    const std::complex<double> factor(0.0, -1.0 / z0);
    Eigen::MatrixXcd bc = factor * plus.partialPivLu().solve(minus);
    Eigen::MatrixXd b = bc.real();
    b = ((b + b.transpose()) / 2.0).eval();
    return b;
}

inline Eigen::MatrixXd susceptance_from_scattering(const Scattering& theta,
                                                   double z0 = kDefaultZ0) {
    return susceptance_from_scattering(theta.theta, z0);
}

struct ScatteringReport {
    double unitarity_defect; // || theta theta^H - I ||_F
    double symmetry_defect;  // || theta - theta^T ||_F
    bool pass;
};

inline ScatteringReport validate_scattering(const Eigen::MatrixXcd& theta, double tol) {
    if (theta.rows() != theta.cols())
        throw DimensionMismatch("validate_scattering: input must be square");
    const Eigen::Index n = theta.rows();
    ScatteringReport r;
    r.unitarity_defect =
        (theta * theta.adjoint() - Eigen::MatrixXcd::Identity(n, n)).norm();
    r.symmetry_defect = (theta - theta.transpose()).norm();
    r.pass = r.unitarity_defect < tol && r.symmetry_defect < tol;
    return r;
}

} // namespace bdris
