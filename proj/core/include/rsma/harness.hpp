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

// Monte-Carlo driver: one scenario draw per seed, shared by every scheme,
// swept over transmit power or UE count.
//
// CSV columns, in order (units in brackets):
//   seed, scheme, num_rrhs, num_ues, total_antennas, power_dbm [dBm],
//   fronthaul_bits [bits/symbol], r_min_bits [bits/symbol], iterations,
//   converged, failed, wall_s [s, empty unless timing is requested]

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rsma/clustering.hpp"
#include "rsma/scenario.hpp"
#include "rsma/wmmse.hpp"

namespace rsma
{

struct ConfigPoint
{
    int num_rrhs = 4;
    int num_ues = 8;
    int antennas_per_rrh = 1;
    double power_dbm = 43.0;
    double fronthaul_bits = 10.0;
};

enum class SweepAxis
{
    power_dbm,
    num_ues,
};

std::string to_string(SweepAxis axis);

struct SweepSpec
{
    ScenarioSpec scenario;
    ConfigPoint base;
    SweepAxis axis = SweepAxis::power_dbm;
    std::vector<double> axis_values;
    std::vector<Scheme> schemes;
    int num_seeds = 1;
    std::uint64_t first_seed = 0;
    double epsilon = 1e-4;
    int max_iters = 200;
    int workers = 0; // 0: one per hardware thread
    bool record_timing = false;
};

/// Throws std::invalid_argument on an empty axis or scheme list, a
/// non-positive seed count, or a non-integral UE count.
void validate_sweep(const SweepSpec &spec);

SweepSpec sweep_from_json(const nlohmann::json &j);
nlohmann::json sweep_to_json(const SweepSpec &spec);

/// The configuration point an axis value maps to.
ConfigPoint point_at(const SweepSpec &spec, double axis_value);

struct InstanceResult
{
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::sdma;
    ConfigPoint point;
    int total_antennas = 0;
    double r_min_bits = 0.0;
    int iterations = 0;
    bool converged = false;
    bool failed = false;
    std::string error;
    double wall_s = 0.0;
};

/// Scenario draw shared by all schemes at (seed, point).
Scenario instance_scenario(std::uint64_t seed, const ConfigPoint &point, const ScenarioSpec &base);

/// Designs the sets for `scheme` and runs the WMMSE loop on the
/// noise-normalized problem. Solver errors are recorded in the row.
WmmseResult solve_scenario(const Scenario &scenario, Scheme scheme, std::uint64_t seed, const WmmseOptions &opts,
                           CommonStructure *structure_out = nullptr);

InstanceResult run_instance(std::uint64_t seed, Scheme scheme, const ConfigPoint &point, const ScenarioSpec &base,
                            const WmmseOptions &opts);

struct SummaryPoint
{
    double axis_value = 0.0;
    Scheme scheme = Scheme::sdma;
    int count = 0;  // successful rows
    int failed = 0;
    double mean = 0.0;
    double stderr_mean = 0.0; // sample std / sqrt(count)
};

struct SweepResult
{
    std::vector<InstanceResult> rows; // sorted by seed, scheme, axis point
    std::vector<SummaryPoint> summary;
    int failures = 0;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

SweepResult run_sweep(const SweepSpec &spec, const ProgressFn &progress = {});

std::vector<SummaryPoint> summarize(const SweepSpec &spec, const std::vector<InstanceResult> &rows);

std::string csv_header();
std::string rows_to_csv(const std::vector<InstanceResult> &rows, bool include_timing);
nlohmann::json summary_to_json(const SweepSpec &spec, const SweepResult &result);

/// Looks up the summary entry for (axis value, scheme); throws if absent.
const SummaryPoint &find_summary(const std::vector<SummaryPoint> &summary, double axis_value, Scheme scheme);

} // namespace rsma
