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

// Random network realizations: uniform node drops on a disk, distance-based
// path loss, per-link log-normal shadowing and Rayleigh fading.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rsma/model.hpp"

namespace rsma
{

struct ScenarioSpec
{
    double radius_m = 100.0;
    double pathloss_a_db = 128.1;
    double pathloss_b = 37.6; // dB per decade of km
    double shadowing_std_db = 8.0;
    double bandwidth_hz = 1e7;
    double noise_psd_dbm_hz = -169.0;
    double min_distance_m = 5.0;
    std::uint64_t seed = 0;
    // Test hook: when false the small-scale fading coefficient is 1.
    bool rayleigh_fading = true;
};

void validate_spec(const ScenarioSpec &spec);

struct Point
{
    double x = 0.0;
    double y = 0.0;
};

struct Placement
{
    std::vector<Point> rrh_xy;
    std::vector<Point> ue_xy;
};

/// Path loss in dB for a distance in km. Throws std::invalid_argument for
/// non-positive distances.
double path_loss_db(double d_km, const ScenarioSpec &spec = {});

/// Receiver noise power in watts over the configured bandwidth.
double noise_variance_w(const ScenarioSpec &spec);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Link distance in meters, floored at spec.min_distance_m.
double link_distance_m(const Point &a, const Point &b, const ScenarioSpec &spec);

/// Draws placement and channels. Deterministic in spec.seed.
std::pair<Placement, ChannelState> generate(const ScenarioSpec &spec, const SystemConfig &cfg);

/// Uniform system configuration: identical RRHs, noise taken from the spec.
SystemConfig make_config(int num_rrhs, int num_ues, int antennas_per_rrh, double fronthaul_bits, double power_dbm,
                         const ScenarioSpec &spec);

struct NormalizedProblem
{
    SystemConfig config;
    ChannelState channel;
};

/// Scales row k of h by 1/sigma_k and sets every noise variance to 1. All
/// SINRs, and therefore all rates, are unchanged.
NormalizedProblem normalize_noise(const SystemConfig &cfg, const ChannelState &chan);

/// Everything needed to reproduce one drop.
struct Scenario
{
    ScenarioSpec spec;
    SystemConfig config;
    Placement placement;
    ChannelState channel;
};

Scenario make_scenario(const ScenarioSpec &spec, const SystemConfig &cfg);

} // namespace rsma
