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

#include "rsma/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rsma/random.hpp"

namespace rsma
{

void validate_spec(const ScenarioSpec &spec)
{
    if (!(spec.min_distance_m > 0.0))
        throw DimensionError("min_distance_m", "must be positive");
    if (!(spec.radius_m > spec.min_distance_m))
        throw DimensionError("radius_m", "must exceed min_distance_m");
    if (!(spec.bandwidth_hz > 0.0))
        throw DimensionError("bandwidth_hz", "must be positive");
    if (!(spec.shadowing_std_db >= 0.0))
        throw DimensionError("shadowing_std_db", "must be non-negative");
    if (!std::isfinite(spec.pathloss_a_db) || !std::isfinite(spec.pathloss_b) || !std::isfinite(spec.noise_psd_dbm_hz))
        throw DimensionError("pathloss", "model parameters must be finite");
}

double path_loss_db(double d_km, const ScenarioSpec &spec)
{
    if (!(d_km > 0.0))
        throw std::invalid_argument("path_loss_db: distance must be positive");
    return spec.pathloss_a_db + spec.pathloss_b * std::log10(d_km);
}

double noise_variance_w(const ScenarioSpec &spec)
{
    return std::pow(10.0, (spec.noise_psd_dbm_hz + 10.0 * std::log10(spec.bandwidth_hz) - 30.0) / 10.0);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double link_distance_m(const Point &a, const Point &b, const ScenarioSpec &spec)
{
    return std::max(std::hypot(a.x - b.x, a.y - b.y), spec.min_distance_m);
}

namespace
{

Point draw_in_disk(Rng &rng, double radius)
{
    const double r = radius * std::sqrt(rng.uniform());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    return {r * std::cos(theta), r * std::sin(theta)};
}

} // namespace

std::pair<Placement, ChannelState> generate(const ScenarioSpec &spec, const SystemConfig &cfg)
{
    validate_spec(spec);
    validate_config(cfg);

    Placement placement;
    {
        Rng rng(spec.seed, Stream::placement);
        for (int i = 0; i < cfg.num_rrhs; ++i)
            placement.rrh_xy.push_back(draw_in_disk(rng, spec.radius_m));
        for (int k = 0; k < cfg.num_ues; ++k)
            placement.ue_xy.push_back(draw_in_disk(rng, spec.radius_m));
    }

    Rng shadow(spec.seed, Stream::shadowing);
    Rng fading(spec.seed, Stream::fading);
    const auto ranges = cfg.antenna_ranges();
    ChannelState chan;
    chan.h = CMatrix::Zero(cfg.num_ues, cfg.total_antennas());
    for (int k = 0; k < cfg.num_ues; ++k)
    {
        for (int i = 0; i < cfg.num_rrhs; ++i)
        {
            const double d_km = link_distance_m(placement.rrh_xy[i], placement.ue_xy[k], spec) / 1000.0;
            const double gain_db = -path_loss_db(d_km, spec) + spec.shadowing_std_db * shadow.normal();
            const double amplitude = std::pow(10.0, gain_db / 20.0);
            for (int a = 0; a < ranges[i].count; ++a)
            {
                const cplx g = spec.rayleigh_fading ? fading.complex_normal() : cplx(1.0, 0.0);
                chan.h(k, ranges[i].offset + a) = amplitude * g;
            }
        }
    }
    return {std::move(placement), std::move(chan)};
}

SystemConfig make_config(int num_rrhs, int num_ues, int antennas_per_rrh, double fronthaul_bits, double power_dbm,
                         const ScenarioSpec &spec)
{
    SystemConfig cfg;
    cfg.num_rrhs = num_rrhs;
    cfg.num_ues = num_ues;
    cfg.antennas.assign(num_rrhs, antennas_per_rrh);
    cfg.fronthaul_capacity.assign(num_rrhs, fronthaul_bits);
    cfg.power_limit.assign(num_rrhs, dbm_to_watts(power_dbm));
    cfg.noise_variance.assign(num_ues, noise_variance_w(spec));
    return cfg;
}

NormalizedProblem normalize_noise(const SystemConfig &cfg, const ChannelState &chan)
{
    NormalizedProblem out{cfg, chan};
    for (int k = 0; k < cfg.num_ues; ++k)
    {
        out.channel.h.row(k) /= std::sqrt(cfg.noise_variance[k]);
        out.config.noise_variance[k] = 1.0;
    }
    return out;
}

Scenario make_scenario(const ScenarioSpec &spec, const SystemConfig &cfg)
{
    auto [placement, channel] = generate(spec, cfg);
    return {spec, cfg, std::move(placement), std::move(channel)};
}

} // namespace rsma
