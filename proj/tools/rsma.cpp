// SPDX-License-Identifier: Apache-2.0
//
// cran-rsma: rate-splitting multiple access design for C-RAN downlinks
// Copyright (C) 2026 The cran-rsma authors
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

// rsma: command line front end.
//
//   rsma scenario generate --seed S --num-rrhs N --num-ues K --antennas A --out FILE
//   rsma cluster --scenario FILE
//   rsma solve --scheme X --scenario FILE --out FILE
//   rsma sweep --spec FILE --out-csv FILE --out-summary FILE
//
// Exit status: 0 success, 1 partial failure, 2 invalid input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "rsma/clustering.hpp"
#include "rsma/harness.hpp"
#include "rsma/scenario.hpp"
#include "rsma/serialization.hpp"
#include "rsma/wmmse.hpp"

namespace
{

constexpr int kOk = 0;
constexpr int kPartial = 1;
constexpr int kInvalid = 2;

struct GenerateArgs
{
    std::uint64_t seed = 0;
    int num_rrhs = 4;
    int num_ues = 8;
    int antennas = 1;
    double power_dbm = 43.0;
    double fronthaul_bits = 10.0;
    std::string out;
};

struct SolveArgs
{
    std::string scheme;
    std::string scenario;
    std::string out;
    double epsilon = 1e-4;
    int max_iters = 200;
    bool timing = false;
};

struct SweepArgs
{
    std::string spec;
    std::string out_csv;
    std::string out_summary;
    int workers = -1;
    bool timing = false;
    bool quiet = false;
};

int cmd_generate(const GenerateArgs &a)
{
    rsma::ScenarioSpec spec;
    spec.seed = a.seed;
    const auto cfg = rsma::make_config(a.num_rrhs, a.num_ues, a.antennas, a.fronthaul_bits, a.power_dbm, spec);
    const auto scenario = rsma::make_scenario(spec, cfg);
    rsma::write_json_file(a.out, rsma::json(scenario));
    return kOk;
}

rsma::Scenario load_scenario(const std::string &path) { return rsma::read_json_file(path).get<rsma::Scenario>(); }

int cmd_cluster(const std::string &path)
{
    const auto scenario = load_scenario(path);
    const auto norm = rsma::normalize_noise(scenario.config, scenario.channel);
    const auto dendrogram = rsma::agglomerate(norm.channel, norm.config.num_ues);
    const auto structure = rsma::design_sets_hc(norm.channel, norm.config.num_ues);
    const rsma::json out{{"dendrogram", dendrogram}, {"structure", structure}};
    std::cout << out.dump(2) << '\n';
    return kOk;
}

int cmd_solve(const SolveArgs &a)
{
    const auto scheme = rsma::parse_scheme(a.scheme);
    const auto scenario = load_scenario(a.scenario);
    rsma::WmmseOptions opts;
    opts.epsilon = a.epsilon;
    opts.max_iters = a.max_iters;
    opts.init_seed = scenario.spec.seed;

    rsma::json out{{"scheme", rsma::to_string(scheme)}, {"seed", scenario.spec.seed}};
    int status = kOk;
    try
    {
        rsma::CommonStructure structure;
        const auto result = rsma::solve_scenario(scenario, scheme, scenario.spec.seed, opts, &structure);
        out["structure"] = structure;
        out["design"] = result.vars;
        out["report"] = result.report;
        out["trace"] = rsma::trace_to_json(result.trace, a.timing);
        out["r_min_bits"] = result.report.r_min;
        if (!result.report.feasible() || !result.trace.converged)
            status = kPartial;
    }
    catch (const rsma::SolverFailure &e)
    {
        out["error"] = e.what();
        out["design"] = e.last_feasible;
        out["trace"] = rsma::trace_to_json(e.trace, a.timing);
        status = kPartial;
    }
    rsma::write_json_file(a.out, out);
    return status;
}

int cmd_sweep(const SweepArgs &a)
{
    auto spec = rsma::sweep_from_json(rsma::read_json_file(a.spec));
    if (a.workers >= 0)
        spec.workers = a.workers;
    if (a.timing)
        spec.record_timing = true;
    rsma::ProgressFn progress;
    if (!a.quiet)
        progress = [](std::size_t done, std::size_t total) {
            std::cerr << "\r" << done << "/" << total << " rows" << (done == total ? "\n" : "") << std::flush;
        };
    const auto result = rsma::run_sweep(spec, progress);
    {
        std::ofstream csv(a.out_csv);
        if (!csv)
            throw std::runtime_error("cannot write " + a.out_csv);
        csv << rsma::rows_to_csv(result.rows, spec.record_timing);
    }
    rsma::write_json_file(a.out_summary, rsma::summary_to_json(spec, result));
    return result.failures > 0 ? kPartial : kOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"RSMA design for C-RAN downlinks"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto *scenario_cmd = app.add_subcommand("scenario", "Scenario tools");
    scenario_cmd->require_subcommand(1);
    auto *generate = scenario_cmd->add_subcommand("generate", "Draw a random network and write scenario JSON");
    generate->add_option("--seed", gen.seed, "Random seed")->required();
    generate->add_option("--num-rrhs", gen.num_rrhs, "Number of RRHs")->required()->check(CLI::PositiveNumber);
    generate->add_option("--num-ues", gen.num_ues, "Number of UEs")->required()->check(CLI::PositiveNumber);
    generate->add_option("--antennas", gen.antennas, "Antennas per RRH")->required()->check(CLI::PositiveNumber);
    generate->add_option("--power-dbm", gen.power_dbm, "Per-RRH power budget in dBm")->capture_default_str();
    generate->add_option("--fronthaul", gen.fronthaul_bits, "Per-RRH fronthaul capacity in bits/symbol")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    generate->add_option("--out", gen.out, "Output file")->required();

    std::string cluster_path;
    auto *cluster = app.add_subcommand("cluster", "Print the dendrogram and common-signal sets");
    cluster->add_option("--scenario", cluster_path, "Scenario JSON")->required();

    SolveArgs solve;
    auto *solve_cmd = app.add_subcommand("solve", "Run the WMMSE design for one scheme");
    solve_cmd->add_option("--scheme", solve.scheme, "sdma, rsma-sc, rsma-rc or rsma-hc")->required();
    solve_cmd->add_option("--scenario", solve.scenario, "Scenario JSON")->required();
    solve_cmd->add_option("--out", solve.out, "Solution JSON")->required();
    solve_cmd->add_option("--epsilon", solve.epsilon, "Stopping tolerance in bits/symbol")->capture_default_str();
    solve_cmd->add_option("--max-iters", solve.max_iters, "Iteration cap")->capture_default_str();
    solve_cmd->add_flag("--timing", solve.timing, "Record wall-clock time per iteration");

    SweepArgs sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo sweep");
    sweep_cmd->add_option("--spec", sweep.spec, "Sweep spec JSON")->required();
    sweep_cmd->add_option("--out-csv", sweep.out_csv, "Per-row CSV")->required();
    sweep_cmd->add_option("--out-summary", sweep.out_summary, "Summary JSON")->required();
    sweep_cmd->add_option("--workers", sweep.workers, "Worker threads (0: all cores)");
    sweep_cmd->add_flag("--timing", sweep.timing, "Fill the wall_s column");
    sweep_cmd->add_flag("--quiet", sweep.quiet, "No progress output");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try
    {
        if (*generate)
            return cmd_generate(gen);
        if (*cluster)
            return cmd_cluster(cluster_path);
        if (*solve_cmd)
            return cmd_solve(solve);
        if (*sweep_cmd)
            return cmd_sweep(sweep);
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    }
    catch (const nlohmann::json::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kPartial;
    }
    return kInvalid;
}
