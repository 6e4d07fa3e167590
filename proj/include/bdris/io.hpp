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
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bdris/errors.hpp"

namespace bdris {

// shortest round-trippable decimal form; locale-independent and stable,
// which the byte-identical sweep contract relies on
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double parsed = 0;
    std::sscanf(buf, "%lg", &parsed);
    if (parsed == v) {
        // try shorter forms for readability
        for (int prec = 1; prec < 17; ++prec) {
            char cand[32];
            std::snprintf(cand, sizeof(cand), "%.*g", prec, v);
            std::sscanf(cand, "%lg", &parsed);
            if (parsed == v)
                return cand;
        }
    }
    return buf;
}

// real matrix CSV: one row per line, comma separated
inline void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j)
                out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
    if (!out)
        throw IoError("write failed: " + path);
}

// complex matrix CSV: interleaved re, im column pairs
inline void write_matrix_csv(const std::string& path, const Eigen::MatrixXcd& m) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j)
                out << ',';
            out << format_double(m(i, j).real()) << ',' << format_double(m(i, j).imag());
        }
        out << '\n';
    }
    if (!out)
        throw IoError("write failed: " + path);
}

inline std::vector<std::vector<double>> read_csv_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open for reading: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw IoError("non-numeric cell in " + path + ": '" + cell + "'");
            }
        rows.push_back(std::move(row));
    }
    return rows;
}

// square complex matrix: accepts n x 2n re/im pairs, or n x n real-valued
inline Eigen::MatrixXcd read_complex_matrix_csv(const std::string& path) {
    const auto rows = read_csv_rows(path);
    if (rows.empty())
        throw IoError("empty matrix file: " + path);
    const std::size_t n = rows.size();
    const std::size_t w = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != w)
            throw IoError("ragged rows in " + path);
    Eigen::MatrixXcd m(n, 0);
    if (w == 2 * n) {
        m.resize(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = {rows[i][2 * j], rows[i][2 * j + 1]};
    } else if (w == n) {
        m.resize(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = rows[i][j];
    } else {
        throw IoError("matrix file must be n x n (real) or n x 2n (re/im pairs): " + path);
    }
    return m;
}

} // namespace bdris
