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

#include "rsma/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rsma/serialization.hpp"

namespace rsma
{

std::string to_string(SweepAxis axis) { return axis == SweepAxis::power_dbm ? "power_dbm" : "num_ues"; }

void validate_sweep(const SweepSpec &spec)
{
    validate_spec(spec.scenario);
    if (spec.axis_values.empty())
        throw std::invalid_argument("sweep: axis values must not be empty");
    if (spec.schemes.empty())
        throw std::invalid_argument("sweep: scheme list must not be empty");
    if (spec.num_seeds < 1)
        throw std::invalid_argument("sweep: num_seeds must be at least 1");
    if (!(spec.epsilon > 0.0) || spec.max_iters < 2)
        throw std::invalid_argument("sweep: epsilon must be positive and max_iters at least 2");
    if (spec.workers < 0)
        throw std::invalid_argument("sweep: workers must be non-negative");
    for (double v : spec.axis_values)
    {
        if (!std::isfinite(v))
            throw std::invalid_argument("sweep: axis values must be finite");
        if (spec.axis == SweepAxis::num_ues && (v != std::floor(v) || v < 1))
            throw std::invalid_argument("sweep: UE counts must be positive integers");
    }
    auto cfg_check = [&](const ConfigPoint &p) {
        ScenarioSpec s = spec.scenario;
        validate_config(make_config(p.num_rrhs, p.num_ues, p.antennas_per_rrh, p.fronthaul_bits, p.power_dbm, s));
    };
    for (double v : spec.axis_values)
        cfg_check(point_at(spec, v));
}

SweepSpec sweep_from_json(const nlohmann::json &j)
{
    SweepSpec spec;
    try
    {
        if (j.contains("scenario"))
            from_json(j.at("scenario"), spec.scenario);
        spec.base.num_rrhs = j.value("num_rrhs", spec.base.num_rrhs);
        spec.base.num_ues = j.value("num_ues", spec.base.num_ues);
        spec.base.antennas_per_rrh = j.value("antennas_per_rrh", spec.base.antennas_per_rrh);
        spec.base.power_dbm = j.value("power_dbm", spec.base.power_dbm);
        spec.base.fronthaul_bits = j.value("fronthaul_bits", spec.base.fronthaul_bits);
        const auto &sweep = j.at("sweep");
        const auto axis = sweep.at("axis").get<std::string>();
        if (axis == "power_dbm")
            spec.axis = SweepAxis::power_dbm;
        else if (axis == "num_ues")
            spec.axis = SweepAxis::num_ues;
        else
            throw std::invalid_argument("sweep: unknown axis '" + axis + "'");
        spec.axis_values = sweep.at("values").get<std::vector<double>>();
        for (const auto &name : j.at("schemes"))
            spec.schemes.push_back(parse_scheme(name.get<std::string>()));
        spec.num_seeds = j.value("num_seeds", spec.num_seeds);
        spec.first_seed = j.value("first_seed", spec.first_seed);
        spec.epsilon = j.value("epsilon", spec.epsilon);
        spec.max_iters = j.value("max_iters", spec.max_iters);
        spec.workers = j.value("workers", spec.workers);
        spec.record_timing = j.value("record_timing", spec.record_timing);
    }
    catch (const nlohmann::json::exception &e)
    {
        throw std::invalid_argument(std::string("sweep: ") + e.what());
    }
    validate_sweep(spec);
    return spec;
}

nlohmann::json sweep_to_json(const SweepSpec &spec)
{
    nlohmann::json schemes = nlohmann::json::array();
    for (auto s : spec.schemes)
        schemes.push_back(to_string(s));
    return {{"scenario", spec.scenario},
            {"num_rrhs", spec.base.num_rrhs},
            {"num_ues", spec.base.num_ues},
            {"antennas_per_rrh", spec.base.antennas_per_rrh},
            {"power_dbm", spec.base.power_dbm},
            {"fronthaul_bits", spec.base.fronthaul_bits},
            {"sweep", {{"axis", to_string(spec.axis)}, {"values", spec.axis_values}}},
            {"schemes", schemes},
            {"num_seeds", spec.num_seeds},
            {"first_seed", spec.first_seed},
            {"epsilon", spec.epsilon},
            {"max_iters", spec.max_iters},
            {"workers", spec.workers},
            {"record_timing", spec.record_timing}};
}

ConfigPoint point_at(const SweepSpec &spec, double axis_value)
{
    ConfigPoint p = spec.base;
    if (spec.axis == SweepAxis::power_dbm)
        p.power_dbm = axis_value;
    else
        p.num_ues = static_cast<int>(axis_value);
    return p;
}

Scenario instance_scenario(std::uint64_t seed, const ConfigPoint &point, const ScenarioSpec &base)
{
    ScenarioSpec spec = base;
    spec.seed = seed;
    const auto cfg =
        make_config(point.num_rrhs, point.num_ues, point.antennas_per_rrh, point.fronthaul_bits, point.power_dbm, spec);
    return make_scenario(spec, cfg);
}

WmmseResult solve_scenario(const Scenario &scenario, Scheme scheme, std::uint64_t seed, const WmmseOptions &opts,
                           CommonStructure *structure_out)
{
    const auto norm = normalize_noise(scenario.config, scenario.channel);
    auto structure = design_sets(scheme, norm.channel, norm.config.num_ues, seed);
    auto result = run_wmmse(norm.channel, structure, norm.config, opts);
    if (structure_out)
        *structure_out = std::move(structure);
    return result;
}

InstanceResult run_instance(std::uint64_t seed, Scheme scheme, const ConfigPoint &point, const ScenarioSpec &base,
                            const WmmseOptions &opts)
{
    InstanceResult row;
    row.seed = seed;
    row.scheme = scheme;
    row.point = point;
    row.total_antennas = point.num_rrhs * point.antennas_per_rrh;
    const auto start = std::chrono::steady_clock::now();
    try
    {
        const auto scenario = instance_scenario(seed, point, base);
        WmmseOptions o = opts;
        o.init_seed = seed;
        const auto result = solve_scenario(scenario, scheme, seed, o);
        row.r_min_bits = result.report.r_min;
        row.iterations = result.trace.iterations();
        row.converged = result.trace.converged;
        if (!result.report.feasible())
        {
            row.failed = true;
            row.error = "returned point violates " + to_string(result.report.violations.front().kind);
        }
    }
    catch (const SolverFailure &e)
    {
        row.failed = true;
        row.error = e.what();
        row.iterations = e.trace.iterations();
    }
    catch (const std::exception &e)
    {
        row.failed = true;
        row.error = e.what();
    }
    row.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

SweepResult run_sweep(const SweepSpec &spec, const ProgressFn &progress)
{
    validate_sweep(spec);

    struct Task
    {
        std::uint64_t seed;
        Scheme scheme;
        double axis_value;
    };
    std::vector<Scheme> schemes = spec.schemes;
    std::sort(schemes.begin(), schemes.end());
    schemes.erase(std::unique(schemes.begin(), schemes.end()), schemes.end());
    std::vector<double> values = spec.axis_values;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<Task> tasks;
    for (int s = 0; s < spec.num_seeds; ++s)
        for (auto scheme : schemes)
            for (double v : values)
                tasks.push_back({spec.first_seed + static_cast<std::uint64_t>(s), scheme, v});

    WmmseOptions opts;
    opts.epsilon = spec.epsilon;
    opts.max_iters = spec.max_iters;

    SweepResult out;
    out.rows.resize(tasks.size());
    std::atomic<std::size_t> next{0}, done{0};
    std::mutex progress_mutex;
    auto worker = [&] {
        for (std::size_t idx = next++; idx < tasks.size(); idx = next++)
        {
            const auto &t = tasks[idx];
            out.rows[idx] = run_instance(t.seed, t.scheme, point_at(spec, t.axis_value), spec.scenario, opts);
            const auto d = ++done;
            if (progress)
            {
                std::lock_guard<std::mutex> lock(progress_mutex);
                progress(d, tasks.size());
            }
        }
    };
    int workers = spec.workers > 0 ? spec.workers : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w)
        pool.emplace_back(worker);
    worker();
    for (auto &th : pool)
        th.join();

    for (const auto &r : out.rows)
        out.failures += r.failed ? 1 : 0;
    out.summary = summarize(spec, out.rows);
    return out;
}

std::vector<SummaryPoint> summarize(const SweepSpec &spec, const std::vector<InstanceResult> &rows)
{
    std::vector<double> values = spec.axis_values;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<Scheme> schemes = spec.schemes;
    std::sort(schemes.begin(), schemes.end());
    schemes.erase(std::unique(schemes.begin(), schemes.end()), schemes.end());

    auto axis_of = [&](const InstanceResult &r) {
        return spec.axis == SweepAxis::power_dbm ? r.point.power_dbm : static_cast<double>(r.point.num_ues);
    };

    std::vector<SummaryPoint> out;
    for (double v : values)
        for (auto scheme : schemes)
        {
            SummaryPoint p;
            p.axis_value = v;
            p.scheme = scheme;
            std::vector<double> xs;
            for (const auto &r : rows)
            {
                if (r.scheme != scheme || axis_of(r) != v)
                    continue;
                if (r.failed)
                    ++p.failed;
                else
                    xs.push_back(r.r_min_bits);
            }
            p.count = static_cast<int>(xs.size());
            if (!xs.empty())
            {
                double sum = 0.0;
                for (double x : xs)
                    sum += x;
                p.mean = sum / static_cast<double>(xs.size());
                if (xs.size() > 1)
                {
                    double ss = 0.0;
                    for (double x : xs)
                        ss += (x - p.mean) * (x - p.mean);
                    const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
                    p.stderr_mean = sd / std::sqrt(static_cast<double>(xs.size()));
                }
            }
            out.push_back(p);
        }
    return out;
}

const SummaryPoint &find_summary(const std::vector<SummaryPoint> &summary, double axis_value, Scheme scheme)
{
    for (const auto &p : summary)
        if (p.axis_value == axis_value && p.scheme == scheme)
            return p;
    throw std::out_of_range("no summary entry for " + to_string(scheme));
}

namespace
{

std::string fmt_double(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace

std::string csv_header()
{
    return "seed,scheme,num_rrhs,num_ues,total_antennas,power_dbm,fronthaul_bits,r_min_bits,iterations,converged,"
           "failed,wall_s\n";
}

std::string rows_to_csv(const std::vector<InstanceResult> &rows, bool include_timing)
{
    std::ostringstream os;
    os << csv_header();
    for (const auto &r : rows)
    {
        os << r.seed << ',' << to_string(r.scheme) << ',' << r.point.num_rrhs << ',' << r.point.num_ues << ','
           << r.total_antennas << ',' << fmt_double(r.point.power_dbm) << ',' << fmt_double(r.point.fronthaul_bits)
           << ',' << (r.failed ? std::string() : fmt_double(r.r_min_bits)) << ',' << r.iterations << ','
           << (r.converged ? 1 : 0) << ',' << (r.failed ? 1 : 0) << ','
           << (include_timing ? fmt_double(r.wall_s) : std::string()) << '\n';
    }
    return os.str();
}

nlohmann::json summary_to_json(const SweepSpec &spec, const SweepResult &result)
{
    nlohmann::json points = nlohmann::json::array();
    for (const auto &p : result.summary)
        points.push_back({{"axis_value", p.axis_value},
                          {"scheme", to_string(p.scheme)},
                          {"count", p.count},
                          {"failed", p.failed},
                          {"mean_r_min_bits", p.mean},
                          {"stderr_r_min_bits", p.stderr_mean}});
    nlohmann::json errors = nlohmann::json::array();
    for (const auto &r : result.rows)
        if (r.failed)
            errors.push_back({{"seed", r.seed},
                              {"scheme", to_string(r.scheme)},
                              {"num_ues", r.point.num_ues},
                              {"power_dbm", r.point.power_dbm},
                              {"error", r.error}});
    return {{"axis", to_string(spec.axis)},
            {"num_rows", result.rows.size()},
            {"failed_rows", result.failures},
            {"points", points},
            {"failures", errors}};
}

} // namespace rsma
