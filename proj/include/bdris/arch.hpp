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
#include <json.hpp>
#include <string>

#include "bdris/errors.hpp"

namespace bdris {

// The seven catalog circuit architectures. Every mask is an instance of
// the cluster family: g groups of size n/g, each with q_g stem ports that
// connect to the whole group while the remaining ports connect to stems
// only.
//
//   single  = cluster(g=1, q_g=0)        diagonal
//   tree    = cluster(g=1, q_g=1)        arrowhead
//   fully   = cluster(g=1, q_g=n-1)
//   stem(q) = cluster(g=1, q_g=q)
//   group   = cluster(g,   q_g=n/g-1)
//   forest  = cluster(g,   q_g=1)
enum class ArchKind { Single, Fully, Group, Tree, Forest, Stem, Cluster };

struct ArchSpec {
    ArchKind kind = ArchKind::Single;
    int n = 0;   // element count
    int g = 1;   // group count (group/forest/cluster)
    int q = 0;   // stem count (stem)
    int q_g = 0; // per-group stem count (cluster)

    int group_count() const {
        switch (kind) {
        case ArchKind::Group:
        case ArchKind::Forest:
        case ArchKind::Cluster:
            return g;
        default:
            return 1;
        }
    }
    int group_size() const { return n / group_count(); }
    // stems per group in the unified cluster view
    int stems_per_group() const {
        switch (kind) {
        case ArchKind::Single:
            return 0;
        case ArchKind::Tree:
        case ArchKind::Forest:
            return 1;
        case ArchKind::Fully:
            return n - 1;
        case ArchKind::Group:
            return n / g - 1;
        case ArchKind::Stem:
            return q;
        case ArchKind::Cluster:
            return q_g;
        }
        return 0;
    }
};

inline const char* to_string(ArchKind kind) {
    switch (kind) {
    case ArchKind::Single:
        return "single";
    case ArchKind::Fully:
        return "fully";
    case ArchKind::Group:
        return "group";
    case ArchKind::Tree:
        return "tree";
    case ArchKind::Forest:
        return "forest";
    case ArchKind::Stem:
        return "stem";
    case ArchKind::Cluster:
        return "cluster";
    }
    return "?";
}

inline ArchKind arch_kind_from_string(const std::string& s) {
    if (s == "single")
        return ArchKind::Single;
    if (s == "fully")
        return ArchKind::Fully;
    if (s == "group")
        return ArchKind::Group;
    if (s == "tree")
        return ArchKind::Tree;
    if (s == "forest")
        return ArchKind::Forest;
    if (s == "stem")
        return ArchKind::Stem;
    if (s == "cluster")
        return ArchKind::Cluster;
    throw ConfigError("unknown architecture kind: " + s);
}

inline ArchSpec make_arch(ArchKind kind, int n, int g = 1, int q = 0, int q_g = 0) {
    if (n < 1)
        throw DimensionMismatch("make_arch: n must be positive");
    ArchSpec spec;
    spec.kind = kind;
    spec.n = n;
    switch (kind) {
    case ArchKind::Single:
    case ArchKind::Fully:
        break;
    case ArchKind::Tree:
        if (n < 2)
            throw InvalidStemCount("make_arch: tree needs n >= 2");
        break;
    case ArchKind::Group:
    case ArchKind::Forest:
        if (g < 1 || n % g != 0)
            throw InvalidGrouping("make_arch: n must be divisible by g");
        if (kind == ArchKind::Forest && n / g < 2)
            throw InvalidStemCount("make_arch: forest needs group size >= 2");
        spec.g = g;
        break;
    case ArchKind::Stem:
        if (q < 0 || q >= n)
            throw InvalidStemCount("make_arch: stem needs 0 <= q <= n-1");
        spec.q = q;
        break;
    case ArchKind::Cluster:
        if (g < 1 || n % g != 0)
            throw InvalidGrouping("make_arch: n must be divisible by g");
        if (q_g < 0 || q_g >= n / g)
            throw InvalidStemCount("make_arch: cluster needs 0 <= q_g <= n/g - 1");
        spec.g = g;
        spec.q_g = q_g;
        break;
    }
    return spec;
}

inline ArchSpec arch_single(int n) { return make_arch(ArchKind::Single, n); }
inline ArchSpec arch_fully(int n) { return make_arch(ArchKind::Fully, n); }
inline ArchSpec arch_group(int n, int g) { return make_arch(ArchKind::Group, n, g); }
inline ArchSpec arch_tree(int n) { return make_arch(ArchKind::Tree, n); }
inline ArchSpec arch_forest(int n, int g) { return make_arch(ArchKind::Forest, n, g); }
inline ArchSpec arch_stem(int n, int q) { return make_arch(ArchKind::Stem, n, 0, q); }
inline ArchSpec arch_cluster(int n, int g, int q_g) { return make_arch(ArchKind::Cluster, n, g, 0, q_g); }

// binary indicator of allowed non-zeros; symmetric, unit diagonal
inline Eigen::MatrixXi mask(const ArchSpec& spec) {
    const int n = spec.n;
    const int ng = spec.group_size();
    const int qg = spec.stems_per_group();
    Eigen::MatrixXi m = Eigen::MatrixXi::Zero(n, n);
    for (int blk = 0; blk < spec.group_count(); ++blk) {
        const int off = blk * ng;
        for (int i = 0; i < ng; ++i)
            for (int j = 0; j < ng; ++j)
                if (i == j || i < qg || j < qg)
                    m(off + i, off + j) = 1;
    }
    return m;
}

// cumulative count of upper-triangular non-zeros, traversed row-major
// over i <= j with carry-forward on zeros, then mirrored
inline Eigen::MatrixXi counting_matrix(const Eigen::MatrixXi& indicator) {
    const Eigen::Index n = indicator.rows();
    if (indicator.cols() != n)
        throw DimensionMismatch("counting_matrix: indicator must be square");
    Eigen::MatrixXi c = Eigen::MatrixXi::Zero(n, n);
    int count = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            if (indicator(i, j) != 0)
                ++count;
            c(i, j) = count;
        }
    for (Eigen::Index i = 1; i < n; ++i)
        for (Eigen::Index j = 0; j < i; ++j)
            c(i, j) = c(j, i);
    return c;
}

// transformation matrix vec(B) = R vec_i(B), stored row-indexed: row m of
// R is e_{row_var[m]+1} or zero when row_var[m] < 0. At most one non-zero
// per row makes the dense N^2 x n_b form wasteful at n = 256.
struct StructureMaps {
    Eigen::MatrixXi indicator; // A_B
    Eigen::MatrixXi counting;  // C_B
    Eigen::VectorXi row_var;   // length n^2, column of the single 1 in R, or -1
    int n_b = 0;               // independent variable count

    Eigen::Index n() const { return indicator.rows(); }

    // R b, length n^2
    Eigen::VectorXd apply(const Eigen::VectorXd& b) const {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(row_var.size());
        for (Eigen::Index m = 0; m < row_var.size(); ++m)
            if (row_var(m) >= 0)
                out(m) = b(row_var(m));
        return out;
    }

    Eigen::MatrixXd dense() const {
        Eigen::MatrixXd r = Eigen::MatrixXd::Zero(row_var.size(), n_b);
        for (Eigen::Index m = 0; m < row_var.size(); ++m)
            if (row_var(m) >= 0)
                r(m, row_var(m)) = 1.0;
        return r;
    }
};

inline StructureMaps transform_matrix(const ArchSpec& spec) {
    StructureMaps maps;
    maps.indicator = mask(spec);
    maps.counting = counting_matrix(maps.indicator);
    const Eigen::Index n = spec.n;
    maps.row_var.resize(n * n);
    for (Eigen::Index m = 0; m < n * n; ++m) {
        const Eigen::Index i = m % n; // column-major vec
        const Eigen::Index j = m / n;
        maps.row_var(m) = maps.indicator(i, j) != 0 ? maps.counting(i, j) - 1 : -1;
    }
    maps.n_b = maps.counting(n - 1, n - 1);
    return maps;
}

// independent variables of a masked symmetric matrix, in counting order
inline Eigen::VectorXd vec_i(const Eigen::MatrixXd& b_mat, const StructureMaps& maps) {
    const Eigen::Index n = maps.n();
    if (b_mat.rows() != n || b_mat.cols() != n)
        throw DimensionMismatch("vec_i: size mismatch");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (maps.indicator(i, j) == 0 && b_mat(i, j) != 0.0)
                throw MaskViolation("vec_i: non-zero entry outside architecture mask");
    Eigen::VectorXd b(maps.n_b);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j)
            if (maps.indicator(i, j) != 0)
                b(maps.counting(i, j) - 1) = b_mat(i, j);
    return b;
}

inline Eigen::MatrixXd expand(const Eigen::VectorXd& b_vec, const StructureMaps& maps) {
    const Eigen::Index n = maps.n();
    if (b_vec.size() != maps.n_b)
        throw DimensionMismatch("expand: variable count mismatch");
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (maps.indicator(i, j) != 0)
                b(i, j) = b_vec(maps.counting(i, j) - 1);
    return b;
}

inline Eigen::VectorXd vec_i(const Eigen::MatrixXd& b_mat, const ArchSpec& spec) {
    return vec_i(b_mat, transform_matrix(spec));
}

inline Eigen::MatrixXd expand(const Eigen::VectorXd& b_vec, const ArchSpec& spec) {
    return expand(b_vec, transform_matrix(spec));
}

// number of independent tunable admittances (upper-triangular mask count)
inline long circuit_complexity(const ArchSpec& spec) {
    const long n = spec.n;
    const long g = spec.group_count();
    const long qg = spec.stems_per_group();
    return qg * n + n - g * qg * (qg + 1) / 2;
}

inline bool obeys_mask(const Eigen::MatrixXd& b, const ArchSpec& spec) {
    const Eigen::MatrixXi m = mask(spec);
    if (b.rows() != m.rows() || b.cols() != m.cols())
        return false;
    for (Eigen::Index i = 0; i < b.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j)
            if (m(i, j) == 0 && b(i, j) != 0.0)
                return false;
    return true;
}

inline void to_json(nlohmann::json& j, const ArchSpec& spec) {
    j = nlohmann::json{{"kind", to_string(spec.kind)}, {"n", spec.n}};
    switch (spec.kind) {
    case ArchKind::Group:
    case ArchKind::Forest:
        j["g"] = spec.g;
        break;
    case ArchKind::Stem:
        j["q"] = spec.q;
        break;
    case ArchKind::Cluster:
        j["g"] = spec.g;
        j["q_g"] = spec.q_g;
        break;
    default:
        break;
    }
}

inline void from_json(const nlohmann::json& j, ArchSpec& spec) {
    const ArchKind kind = arch_kind_from_string(j.at("kind").get<std::string>());
    spec = make_arch(kind, j.at("n").get<int>(), j.value("g", 1), j.value("q", 0),
                     j.value("q_g", 0));
}

} // namespace bdris
