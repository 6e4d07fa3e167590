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

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "bdris/bdris.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

// default output directory: --out beats BDRIS_OUT_DIR beats cwd
std::filesystem::path resolve_out_dir(const std::string& out_flag) {
    if (!out_flag.empty())
        return out_flag;
    if (const char* env = std::getenv("BDRIS_OUT_DIR"); env && *env)
        return env;
    return ".";
}

struct ArchFlags {
    std::string kind = "fully";
    int n = 16;
    int g = 1;
    int q = 0;
    int q_g = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--kind", kind,
                        "architecture: single|fully|group|tree|forest|stem|cluster");
        cmd->add_option("--n", n, "element count");
        cmd->add_option("--g", g, "group count (group/forest/cluster)");
        cmd->add_option("--q", q, "stem count (stem)");
        cmd->add_option("--q-g", q_g, "per-group stem count (cluster)");
    }

    bdris::ArchSpec spec() const {
        return bdris::make_arch(bdris::arch_kind_from_string(kind), n, g, q, q_g);
    }
};

bdris::ArchSpec load_arch_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw bdris::IoError("cannot open arch spec: " + path);
    nlohmann::json j;
    try {
        in >> j;
        return j.get<bdris::ArchSpec>();
    } catch (const nlohmann::json::exception& e) {
        throw bdris::ConfigError("bad arch spec " + path + ": " + e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"scattering matrix design for beyond-diagonal RIS architectures"};
    app.require_subcommand(1);
    app.fallthrough(); // global --seed/--z0/--out may follow the subcommand

    std::string out_flag;
    std::uint64_t seed = 0;
    double z0 = bdris::kDefaultZ0;
    app.add_option("--out", out_flag, "output directory (default: $BDRIS_OUT_DIR or .)");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--z0", z0, "reference impedance, ohms");

    // project: read matrix + arch, write B and theta, print metrics
    auto* cmd_project = app.add_subcommand("project", "project a matrix onto an architecture");
    std::string x_path, arch_path;
    ArchFlags project_arch;
    cmd_project->add_option("--x", x_path, "input matrix CSV (n x n real or n x 2n re/im)")
        ->required();
    cmd_project->add_option("--arch", arch_path, "ArchSpec JSON file");
    project_arch.attach(cmd_project);

    // gain: one channel realization, gain designs
    auto* cmd_gain = app.add_subcommand("gain", "channel-gain design on one realization");
    ArchFlags gain_arch;
    int gain_l = 4, gain_k = 4;
    std::string gain_method = "both";
    gain_arch.attach(cmd_gain);
    cmd_gain->add_option("--l", gain_l, "BS antennas");
    cmd_gain->add_option("--k", gain_k, "users");
    cmd_gain->add_option("--method", gain_method, "ub_sosup|sosup_qn|both");

    // wsr: two-stage joint design on one realization
    auto* cmd_wsr = app.add_subcommand("wsr", "two-stage WSR design on one realization");
    ArchFlags wsr_arch;
    int wsr_l = 4, wsr_k = 4;
    std::string stage1 = "ub_sosup";
    double p_t = 1.0, noise = 1e-11;
    wsr_arch.attach(cmd_wsr);
    cmd_wsr->add_option("--l", wsr_l, "BS antennas");
    cmd_wsr->add_option("--k", wsr_k, "users");
    cmd_wsr->add_option("--stage1", stage1, "ub_sosup|sosup_qn|sosup");
    cmd_wsr->add_option("--p-t", p_t, "transmit power budget, watts");
    cmd_wsr->add_option("--noise", noise, "noise power per user, watts");

    // complexity: admittance component count
    auto* cmd_complexity = app.add_subcommand("complexity", "circuit complexity of a spec");
    ArchFlags cx_arch;
    cx_arch.attach(cmd_complexity);

    // sweep: Monte-Carlo experiment from a JSON config
    auto* cmd_sweep = app.add_subcommand("sweep", "run a Monte-Carlo sweep from a config");
    std::string sweep_config;
    std::string sweep_out_override;
    cmd_sweep->add_option("--config", sweep_config, "sweep config JSON")->required();
    cmd_sweep->add_option("--output", sweep_out_override, "override the config output path");

    // validate: scattering contract check on a matrix file
    auto* cmd_validate = app.add_subcommand("validate", "check a matrix file for the "
                                                        "symmetric-unitary contract");
    std::string val_path;
    double val_tol = 1e-9;
    cmd_validate->add_option("--matrix", val_path, "matrix CSV")->required();
    cmd_validate->add_option("--tol", val_tol, "defect tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*cmd_project) {
            const bdris::ArchSpec spec =
                arch_path.empty() ? project_arch.spec() : load_arch_json(arch_path);
            const Eigen::MatrixXcd x = bdris::read_complex_matrix_csv(x_path);
            const bdris::ProjectionResult res = bdris::project(x, spec, z0);
            const auto dir = resolve_out_dir(out_flag);
            std::filesystem::create_directories(dir);
            bdris::write_matrix_csv((dir / "B.csv").string(), res.b.b);
            bdris::write_matrix_csv((dir / "theta.csv").string(), res.theta.theta);
            std::cout << "lower_bound=" << bdris::format_double(res.lower_bound)
                      << " achieved=" << bdris::format_double(res.achieved)
                      << " ls_residual=" << bdris::format_double(res.ls_residual)
                      << (res.degenerate ? " degenerate=1" : "") << "\n"
                      << "wrote " << (dir / "B.csv").string() << ", "
                      << (dir / "theta.csv").string() << "\n";
        } else if (*cmd_gain) {
            const bdris::ArchSpec spec = gain_arch.spec();
            const bdris::ChannelSet ch = bdris::gen_channels(spec.n, gain_l, gain_k, seed);
            const bdris::UpperBoundAnalysis ub = bdris::upper_bound(ch);
            std::cout << "ub=" << bdris::format_double(ub.ub_value) << "\n";
            if (gain_method == "ub_sosup" || gain_method == "both") {
                const bdris::GainDesign gd = bdris::ub_sosup(ch, spec, z0);
                std::cout << "gain_ub_sosup=" << bdris::format_double(gd.gain) << "\n";
            }
            if (gain_method == "sosup_qn" || gain_method == "both") {
                const bdris::QuasiNewtonGain qn = bdris::sosup_quasi_newton(ch, spec, z0);
                std::cout << "gain_sosup_qn=" << bdris::format_double(qn.gain)
                          << " iterations=" << qn.iterations << "\n";
            }
            if (gain_method != "ub_sosup" && gain_method != "sosup_qn" && gain_method != "both")
                throw bdris::ConfigError("unknown --method: " + gain_method);
        } else if (*cmd_wsr) {
            const bdris::ArchSpec spec = wsr_arch.spec();
            bdris::ChannelOptions copts;
            copts.noise_power = noise;
            const bdris::ChannelSet ch =
                bdris::gen_channels(spec.n, wsr_l, wsr_k, seed, copts);
            const bdris::TwoStageResult ts =
                bdris::two_stage(ch, spec, z0, bdris::stage1_from_string(stage1), p_t,
                                 Eigen::VectorXd::Ones(wsr_k));
            std::cout << "stage1_gain=" << bdris::format_double(ts.stage1_gain)
                      << " wsr=" << bdris::format_double(ts.report.wsr)
                      << " mmf=" << bdris::format_double(ts.report.mmf)
                      << " ee=" << bdris::format_double(ts.report.ee) << "\nrates=";
            for (Eigen::Index i = 0; i < ts.report.rates.size(); ++i)
                std::cout << (i ? "," : "") << bdris::format_double(ts.report.rates(i));
            std::cout << "\n";
        } else if (*cmd_complexity) {
            std::cout << bdris::circuit_complexity(cx_arch.spec()) << "\n";
        } else if (*cmd_sweep) {
            bdris::SweepConfig cfg = bdris::load_sweep_config(sweep_config);
            if (!sweep_out_override.empty())
                cfg.output = sweep_out_override;
            if (seed != 0)
                cfg.seed = seed;
            const bdris::SweepSummary s = bdris::run_sweep(cfg, std::cout);
            std::cout << "wrote " << s.output_path << " (" << s.data_rows << " data rows)\n";
        } else if (*cmd_validate) {
            const Eigen::MatrixXcd theta = bdris::read_complex_matrix_csv(val_path);
            const bdris::ScatteringReport rep = bdris::validate_scattering(theta, val_tol);
            std::cout << "unitarity_defect=" << bdris::format_double(rep.unitarity_defect)
                      << " symmetry_defect=" << bdris::format_double(rep.symmetry_defect)
                      << " pass=" << (rep.pass ? "true" : "false") << "\n";
            if (!rep.pass)
                return kExitRuntime;
        }
    } catch (const bdris::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
