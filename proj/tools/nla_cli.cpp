// Copyright 2026 The nla-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// nla: run, verify, sample and sweep the W-state amplifier.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input or I/O error.

#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nla/report.hpp"
#include "nla/sweep.hpp"
#include "nla/verify.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct RunArgs {
    int n = 3;
    double eta = 0.5;
    double t = 0.5;
    std::string format = "text";
};

struct SampleArgs {
    int n = 3;
    double eta = 0.5;
    double t = 0.5;
    std::uint64_t shots = 1000000;
    std::uint64_t seed = 1;
    std::string format = "text";
};

struct SweepArgs {
    std::string quantity = "success_prob";
    std::vector<int> ns{3};
    std::vector<double> etas{0.2};
    double t_min = 0.01;
    double t_max = 0.99;
    int steps = 99;
    std::string out;
    bool include_limits = false;
    bool cross_check = false;
    std::string preset;
};

int write_sweep(const nla::SweepSpec &spec, const std::string &path) {
    auto rows = nla::run_sweep(spec);
    if (path.empty() || path == "-") {
        nla::write_csv(std::cout, rows);
        return 0;
    }
    std::ostringstream buf;
    nla::write_csv(buf, rows);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << buf.str()) || !out.flush()) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return kExitUsage;
    }
    return 0;
}

nla::Quantity parse_quantity(const std::string &name) {
    if (name == "gain") {
        return nla::Quantity::gain;
    }
    if (name == "success_prob" || name == "p") {
        return nla::Quantity::success_prob;
    }
    throw nla::ConfigError("unknown quantity '" + name + "'");
}

void add_sweep_output_flags(CLI::App *cmd, SweepArgs &a) {
    cmd->add_option("--steps", a.steps, "Number of t grid points")->capture_default_str();
    cmd->add_option("--t-min", a.t_min, "First t value")->capture_default_str();
    cmd->add_option("--t-max", a.t_max, "Last t value")->capture_default_str();
    cmd->add_option("--out", a.out, "CSV output path (stdout when omitted)");
    cmd->add_flag("--include-limits", a.include_limits, "Add flagged rows at t = 0 and t = 1");
    cmd->add_flag("--cross-check", a.cross_check, "Add brute-force simulator rows");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Noiseless linear amplification of single-photon W states"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto *run = app.add_subcommand("run", "Simulate one protocol instance");
    run->add_option("--n", run_args.n, "Number of modes N (>= 2)")->capture_default_str();
    run->add_option("--eta", run_args.eta, "Photon survival probability")->capture_default_str();
    run->add_option("--t", run_args.t, "VBS transmission")->capture_default_str();
    run->add_option("--format", run_args.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    nla::VerifyGrid grid;
    bool inject_sign_error = false;
    auto *verify = app.add_subcommand("verify", "Check the simulator against the closed forms on a grid");
    verify->add_option("--n-max", grid.n_max, "Largest N on the grid")->capture_default_str();
    verify->add_option("--n-min", grid.n_min, "Smallest N on the grid")->capture_default_str();
    verify->add_option("--eta-steps", grid.eta_steps, "eta points in [0.1, 0.9]")->capture_default_str();
    verify->add_option("--t-steps", grid.t_steps, "t points in [0.05, 0.95]")->capture_default_str();
    verify->add_flag("--inject-bs-sign-error", inject_sign_error, "Test hook: mis-sign the first party's splitter")
        ->group("");

    SweepArgs sweep_args;
    auto *sweep = app.add_subcommand("sweep", "Tabulate gain or success probability against t");
    sweep->add_option("--quantity", sweep_args.quantity, "gain or success_prob")->capture_default_str();
    sweep->add_option("--n", sweep_args.ns, "Mode counts (comma separated)")->delimiter(',');
    sweep->add_option("--eta", sweep_args.etas, "Survival probabilities (comma separated)")->delimiter(',');
    add_sweep_output_flags(sweep, sweep_args);

    SweepArgs preset_args;
    auto *preset = app.add_subcommand("preset", "Emit the data behind one of the figures");
    preset->add_option("figure", preset_args.preset, "fig3, fig4, fig5 or fig6")
        ->required()
        ->check(CLI::IsMember({"fig3", "fig4", "fig5", "fig6"}));
    add_sweep_output_flags(preset, preset_args);

    SampleArgs sample_args;
    auto *sample = app.add_subcommand("sample", "Monte Carlo estimate of P and eta'");
    sample->add_option("--n", sample_args.n, "Number of modes N (>= 2)")->capture_default_str();
    sample->add_option("--eta", sample_args.eta, "Photon survival probability")->capture_default_str();
    sample->add_option("--t", sample_args.t, "VBS transmission")->capture_default_str();
    sample->add_option("--shots", sample_args.shots, "Number of shots")->capture_default_str();
    sample->add_option("--seed", sample_args.seed, "RNG seed")->capture_default_str();
    sample->add_option("--format", sample_args.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*run) {
            auto outcome = nla::run_nla({run_args.n, run_args.eta, run_args.t});
            if (run_args.format == "json") {
                std::cout << nla::to_json(outcome).dump(2) << '\n';
            } else {
                nla::render_text(std::cout, outcome);
            }
            return 0;
        }
        if (*verify) {
            nla::SimulationOptions opts;
            if (inject_sign_error) {
                constexpr double h = 1.0 / std::numbers::sqrt2;
                opts.combiner_overrides[0] = {{{{h, -h}, {h, h}}}};
            }
            auto report = nla::verify_grid(grid, opts);
            nla::render_text(std::cout, report);
            return report.passed() ? 0 : kExitFailure;
        }
        if (*sweep) {
            nla::SweepSpec spec;
            spec.quantity = parse_quantity(sweep_args.quantity);
            spec.ns = sweep_args.ns;
            spec.etas = sweep_args.etas;
            spec.t_start = sweep_args.t_min;
            spec.t_stop = sweep_args.t_max;
            spec.steps = sweep_args.steps;
            spec.include_limits = sweep_args.include_limits;
            spec.cross_check = sweep_args.cross_check;
            return write_sweep(spec, sweep_args.out);
        }
        if (*preset) {
            nla::SweepSpec spec = *nla::figure_preset(preset_args.preset);
            spec.t_start = preset_args.t_min;
            spec.t_stop = preset_args.t_max;
            spec.steps = preset_args.steps;
            spec.include_limits = preset_args.include_limits;
            spec.cross_check = preset_args.cross_check;
            return write_sweep(spec, preset_args.out);
        }
        if (*sample) {
            auto report = nla::sample_run({sample_args.n, sample_args.eta, sample_args.t}, sample_args.shots,
                                          sample_args.seed);
            if (sample_args.format == "json") {
                std::cout << nla::to_json(report).dump(2) << '\n';
            } else {
                nla::render_text(std::cout, report);
            }
            return 0;
        }
    } catch (const nla::ConfigError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
