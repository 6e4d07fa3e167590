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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "bdris/arch.hpp"
#include "bdris/beamform.hpp"
#include "bdris/channel.hpp"
#include "bdris/errors.hpp"
#include "bdris/gain_opt.hpp"
#include "bdris/io.hpp"
#include "bdris/rng.hpp"

namespace bdris {

enum class Experiment { Complexity, GainVsQ, WsrVsQ, Tradeoff, Streams, Timing };

inline const char* to_string(Experiment e) {
    switch (e) {
    case Experiment::Complexity:
        return "complexity";
    case Experiment::GainVsQ:
        return "gain_vs_q";
    case Experiment::WsrVsQ:
        return "wsr_vs_q";
    case Experiment::Tradeoff:
        return "tradeoff";
    case Experiment::Streams:
        return "streams";
    case Experiment::Timing:
        return "timing";
    }
    return "?";
}

inline Experiment experiment_from_string(const std::string& s) {
    if (s == "complexity")
        return Experiment::Complexity;
    if (s == "gain_vs_q")
        return Experiment::GainVsQ;
    if (s == "wsr_vs_q")
        return Experiment::WsrVsQ;
    if (s == "tradeoff")
        return Experiment::Tradeoff;
    if (s == "streams")
        return Experiment::Streams;
    if (s == "timing")
        return Experiment::Timing;
    throw ConfigError("unknown experiment: " + s);
}

inline Stage1Method stage1_from_string(const std::string& s) {
    if (s == "ub_sosup")
        return Stage1Method::UbSosup;
    if (s == "sosup_qn")
        return Stage1Method::SosupQuasiNewton;
    if (s == "sosup")
        return Stage1Method::HeuristicSosup;
    throw ConfigError("unknown method: " + s + " (expected ub_sosup, sosup_qn or sosup)");
}

struct SweepConfig {
    Experiment experiment = Experiment::Complexity;
    std::vector<int> n_grid;
    int l = 1;
    std::vector<int> k_grid{1};
    std::vector<nlohmann::json> arch_templates;
    int realizations = 100;
    std::uint64_t seed = 0;
    double z0 = kDefaultZ0;
    double p_t = 1.0;
    double noise_power = 1e-11;
    PathLossModel pathloss;
    std::vector<Stage1Method> methods{Stage1Method::UbSosup};
    std::string output;
    int threads = 0; // 0 = hardware concurrency
};

namespace detail {

inline std::vector<int> int_or_list(const nlohmann::json& j, const std::string& field) {
    std::vector<int> out;
    if (j.is_number_integer()) {
        out.push_back(j.get<int>());
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (!v.is_number_integer())
                throw ConfigError("field '" + field + "' must contain integers");
            out.push_back(v.get<int>());
        }
    } else {
        throw ConfigError("field '" + field + "' must be an integer or a list");
    }
    if (out.empty())
        throw ConfigError("field '" + field + "' must not be empty");
    return out;
}

} // namespace detail

inline SweepConfig parse_sweep_config(const nlohmann::json& j) {
    SweepConfig c;
    try {
        c.experiment = experiment_from_string(j.at("experiment").get<std::string>());
        c.n_grid = detail::int_or_list(j.at("n"), "n");
        if (j.contains("l"))
            c.l = j.at("l").get<int>();
        if (j.contains("k"))
            c.k_grid = detail::int_or_list(j.at("k"), "k");
        if (!j.contains("arch_list") || !j.at("arch_list").is_array() ||
            j.at("arch_list").empty())
            throw ConfigError("field 'arch_list' must be a non-empty array");
        for (const auto& a : j.at("arch_list"))
            c.arch_templates.push_back(a);
        c.realizations = j.value("realizations", 100);
        if (c.realizations < 1)
            throw ConfigError("field 'realizations' must be >= 1");
        c.seed = j.value("seed", std::uint64_t{0});
        c.z0 = j.value("z0", kDefaultZ0);
        c.p_t = j.value("p_t", 1.0);
        c.noise_power = j.value("noise_power", 1e-11);
        if (j.contains("pathloss")) {
            const auto& p = j.at("pathloss");
            c.pathloss.l0 = p.value("l0", c.pathloss.l0);
            c.pathloss.d0 = p.value("d0", c.pathloss.d0);
            c.pathloss.d_bs_ris = p.value("d_bs_ris", c.pathloss.d_bs_ris);
            c.pathloss.d_ris_user = p.value("d_ris_user", c.pathloss.d_ris_user);
            c.pathloss.alpha_bs_ris = p.value("alpha_bs_ris", c.pathloss.alpha_bs_ris);
            c.pathloss.alpha_ris_user = p.value("alpha_ris_user", c.pathloss.alpha_ris_user);
        }
        if (j.contains("methods")) {
            c.methods.clear();
            for (const auto& m : j.at("methods"))
                c.methods.push_back(stage1_from_string(m.get<std::string>()));
            if (c.methods.empty())
                throw ConfigError("field 'methods' must not be empty");
        }
        if (!j.contains("output") || !j.at("output").is_string() ||
            j.at("output").get<std::string>().empty())
            throw ConfigError("field 'output' (CSV path) is required");
        c.output = j.at("output").get<std::string>();
        c.threads = j.value("threads", 0);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid sweep config: ") + e.what());
    }
    return c;
}

inline SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_sweep_config(j);
}

namespace detail {

inline ArchSpec instantiate_arch(const nlohmann::json& tmpl, int n) {
    nlohmann::json j = tmpl;
    j["n"] = n;
    try {
        return j.get<ArchSpec>();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("arch template " + tmpl.dump() + " invalid at n=" +
                          std::to_string(n) + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad arch template " + tmpl.dump() + ": " + e.what());
    }
}

inline std::string arch_label(const ArchSpec& s) {
    std::string label = to_string(s.kind);
    switch (s.kind) {
    case ArchKind::Group:
    case ArchKind::Forest:
        label += "_g" + std::to_string(s.g);
        break;
    case ArchKind::Stem:
        label += "_q" + std::to_string(s.q);
        break;
    case ArchKind::Cluster:
        label += "_g" + std::to_string(s.g) + "_qg" + std::to_string(s.q_g);
        break;
    default:
        break;
    }
    return label;
}

struct SweepCell {
    ArchSpec spec;
    int n, l, k;
};

// per-realization metric evaluation; order matches metric_names()
inline std::vector<double> evaluate_cell(const SweepConfig& cfg, const SweepCell& cell,
                                         int realization) {
    ChannelOptions copts;
    copts.pathloss = cfg.pathloss;
    copts.noise_power = cfg.noise_power;
    const ChannelSet ch = gen_channels(cell.n, cell.l, cell.k,
                                       SplitMix64::stream_seed(cfg.seed, realization), copts);
    const Eigen::VectorXd weights = Eigen::VectorXd::Ones(cell.k);

    std::vector<double> m;
    switch (cfg.experiment) {
    case Experiment::Complexity:
        m.push_back(static_cast<double>(circuit_complexity(cell.spec)));
        break;
    case Experiment::GainVsQ: {
        m.push_back(upper_bound(ch).ub_value);
        for (const Stage1Method method : cfg.methods) {
            switch (method) {
            case Stage1Method::UbSosup:
                m.push_back(ub_sosup(ch, cell.spec, cfg.z0).gain);
                break;
            case Stage1Method::SosupQuasiNewton:
                m.push_back(sosup_quasi_newton(ch, cell.spec, cfg.z0).gain);
                break;
            case Stage1Method::HeuristicSosup: {
                Eigen::MatrixXcd rect = Eigen::MatrixXcd::Zero(ch.k(), ch.l());
                rect.diagonal().setOnes();
                const ProjectionResult pr =
                    project(ch.h * rect * ch.e.adjoint(), cell.spec, cfg.z0);
                m.push_back(sum_gain(ch, pr.theta.theta));
                break;
            }
            }
        }
        break;
    }
    case Experiment::WsrVsQ:
    case Experiment::Tradeoff:
    case Experiment::Streams: {
        if (cfg.experiment == Experiment::Streams)
            m.push_back(upper_bound(ch).ub_value);
        for (const Stage1Method method : cfg.methods) {
            const TwoStageResult ts =
                two_stage(ch, cell.spec, cfg.z0, method, cfg.p_t, weights);
            m.push_back(ts.stage1_gain);
            m.push_back(ts.report.wsr);
        }
        break;
    }
    case Experiment::Timing: {
        for (const Stage1Method method : cfg.methods) {
            const auto t0 = std::chrono::steady_clock::now();
            const TwoStageResult ts =
                two_stage(ch, cell.spec, cfg.z0, method, cfg.p_t, weights);
            const auto t1 = std::chrono::steady_clock::now();
            (void)ts;
            m.push_back(std::chrono::duration<double>(t1 - t0).count());
        }
        break;
    }
    }
    return m;
}

inline std::vector<std::string> metric_names(const SweepConfig& cfg) {
    std::vector<std::string> names;
    switch (cfg.experiment) {
    case Experiment::Complexity:
        names.push_back("complexity");
        break;
    case Experiment::GainVsQ:
        names.push_back("ub");
        for (const Stage1Method m : cfg.methods)
            names.push_back(std::string("gain_") + to_string(m));
        break;
    case Experiment::WsrVsQ:
    case Experiment::Tradeoff:
    case Experiment::Streams:
        if (cfg.experiment == Experiment::Streams)
            names.push_back("ub");
        for (const Stage1Method m : cfg.methods) {
            names.push_back(std::string("stage1_gain_") + to_string(m));
            names.push_back(std::string("wsr_") + to_string(m));
        }
        break;
    case Experiment::Timing:
        for (const Stage1Method m : cfg.methods)
            names.push_back(std::string("time_") + to_string(m));
        break;
    }
    return names;
}

} // namespace detail

struct SweepSummary {
    std::string output_path;
    long data_rows = 0;
};

// One CSV row per (grid point x architecture x realization), then
// aggregate rows (mean, standard error; median as well for timing).
// Byte-identical output for identical config + seed: realizations are
// merged in index order regardless of the worker count.
inline SweepSummary run_sweep(const SweepConfig& cfg, std::ostream& log) {
    // grid of cells, in config order
    std::vector<detail::SweepCell> cells;
    for (const int n : cfg.n_grid)
        for (const int k : cfg.k_grid)
            for (const auto& tmpl : cfg.arch_templates)
                cells.push_back({detail::instantiate_arch(tmpl, n), n, cfg.l, k});

    const std::vector<std::string> metrics = detail::metric_names(cfg);
    const bool stochastic = cfg.experiment != Experiment::Complexity;
    const int realizations = stochastic ? cfg.realizations : 1;

    unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
    if (cfg.experiment == Experiment::Timing)
        threads = 1; // parallel solver calls would contaminate wall-clock medians

    std::ofstream out(cfg.output);
    if (!out)
        throw IoError("cannot open sweep output: " + cfg.output);
    out << "experiment,arch,kind,n,g,q,q_g,complexity,l,k,realization,stat";
    for (const auto& name : metrics)
        out << ',' << name;
    out << '\n';

    SweepSummary summary;
    summary.output_path = cfg.output;

    for (const auto& cell : cells) {
        std::vector<std::vector<double>> results(realizations);
        if (threads <= 1 || realizations == 1) {
            for (int r = 0; r < realizations; ++r)
                results[r] = detail::evaluate_cell(cfg, cell, r);
        } else {
            std::atomic<int> next{0};
            std::vector<std::thread> pool;
            const unsigned nw = std::min<unsigned>(threads, realizations);
            for (unsigned w = 0; w < nw; ++w)
                pool.emplace_back([&] {
                    for (int r = next.fetch_add(1); r < realizations; r = next.fetch_add(1))
                        results[r] = detail::evaluate_cell(cfg, cell, r);
                });
            for (auto& t : pool)
                t.join();
        }

        const std::string prefix_base =
            std::string(to_string(cfg.experiment)) + ',' + detail::arch_label(cell.spec) + ',' +
            to_string(cell.spec.kind) + ',' + std::to_string(cell.n) + ',' +
            std::to_string(cell.spec.group_count()) + ',' +
            std::to_string(cell.spec.kind == ArchKind::Stem ? cell.spec.q : 0) + ',' +
            std::to_string(cell.spec.kind == ArchKind::Cluster ? cell.spec.q_g : 0) + ',' +
            std::to_string(circuit_complexity(cell.spec)) + ',' + std::to_string(cell.l) + ',' +
            std::to_string(cell.k);

        for (int r = 0; r < realizations; ++r) {
            out << prefix_base << ',' << r << ','; // empty stat column
            for (std::size_t i = 0; i < metrics.size(); ++i)
                out << ',' << format_double(results[r][i]);
            out << '\n';
            ++summary.data_rows;
        }

        if (stochastic) {
            const std::size_t nm = metrics.size();
            std::vector<double> mean(nm, 0.0), stderr_(nm, 0.0), median(nm, 0.0);
            for (std::size_t i = 0; i < nm; ++i) {
                double sum = 0.0;
                for (int r = 0; r < realizations; ++r)
                    sum += results[r][i];
                mean[i] = sum / realizations;
                double ss = 0.0;
                for (int r = 0; r < realizations; ++r)
                    ss += (results[r][i] - mean[i]) * (results[r][i] - mean[i]);
                stderr_[i] = realizations > 1
                                 ? std::sqrt(ss / (realizations - 1)) / std::sqrt(realizations)
                                 : 0.0;
                std::vector<double> sorted(realizations);
                for (int r = 0; r < realizations; ++r)
                    sorted[r] = results[r][i];
                std::sort(sorted.begin(), sorted.end());
                median[i] = realizations % 2 == 1
                                ? sorted[realizations / 2]
                                : 0.5 * (sorted[realizations / 2 - 1] + sorted[realizations / 2]);
            }
            auto emit = [&](const char* stat, const std::vector<double>& vals) {
                out << prefix_base << ",-1," << stat;
                for (double v : vals)
                    out << ',' << format_double(v);
                out << '\n';
            };
            emit("mean", mean);
            emit("stderr", stderr_);
            if (cfg.experiment == Experiment::Timing)
                emit("median", median);

            log << detail::arch_label(cell.spec) << " n=" << cell.n << " k=" << cell.k;
            for (std::size_t i = 0; i < nm; ++i)
                log << ' ' << metrics[i] << "=" << format_double(mean[i]);
            log << '\n';
        } else {
            log << detail::arch_label(cell.spec) << " n=" << cell.n << ' ' << metrics[0] << '='
                << format_double(results[0][0]) << '\n';
        }
    }
    if (!out)
        throw IoError("write failed: " + cfg.output);
    return summary;
}

} // namespace bdris
