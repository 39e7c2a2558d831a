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

#include "rsma/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace rsma
{

int SystemConfig::total_antennas() const { return std::accumulate(antennas.begin(), antennas.end(), 0); }

std::vector<AntennaRange> SystemConfig::antenna_ranges() const
{
    std::vector<AntennaRange> out;
    out.reserve(antennas.size());
    int offset = 0;
    for (int n : antennas)
    {
        out.push_back({offset, n});
        offset += n;
    }
    return out;
}

AntennaRange SystemConfig::antenna_range(int rrh) const
{
    int offset = 0;
    for (int i = 0; i < rrh; ++i)
        offset += antennas[i];
    return {offset, antennas[rrh]};
}

namespace
{

template <typename T>
void require_length(const std::vector<T> &v, int n, const char *field)
{
    if (static_cast<int>(v.size()) != n)
        throw DimensionError(field, "expected length " + std::to_string(n) + ", got " + std::to_string(v.size()));
}

} // namespace

void validate_config(const SystemConfig &cfg)
{
    if (cfg.num_rrhs <= 0)
        throw DimensionError("num_rrhs", "must be positive");
    if (cfg.num_ues <= 0)
        throw DimensionError("num_ues", "must be positive");
    require_length(cfg.antennas, cfg.num_rrhs, "antennas");
    require_length(cfg.fronthaul_capacity, cfg.num_rrhs, "fronthaul_capacity");
    require_length(cfg.power_limit, cfg.num_rrhs, "power_limit");
    require_length(cfg.noise_variance, cfg.num_ues, "noise_variance");
    for (int n : cfg.antennas)
        if (n <= 0)
            throw DimensionError("antennas", "antenna counts must be positive");
    for (double c : cfg.fronthaul_capacity)
        if (!(c >= 0.0) || !std::isfinite(c))
            throw DimensionError("fronthaul_capacity", "capacities must be finite and non-negative");
    for (double p : cfg.power_limit)
        if (!(p > 0.0) || !std::isfinite(p))
            throw DimensionError("power_limit", "power limits must be finite and positive");
    for (double s : cfg.noise_variance)
        if (!(s > 0.0) || !std::isfinite(s))
            throw DimensionError("noise_variance", "noise variances must be finite and positive");

    // antenna ranges are derived, so this only guards against overflow
    int expected = 0;
    for (const auto &r : cfg.antenna_ranges())
    {
        if (r.offset != expected)
            throw DimensionError("antennas", "antenna ranges are not contiguous");
        expected += r.count;
    }
    if (expected != cfg.total_antennas())
        throw DimensionError("antennas", "antenna ranges do not cover n_R");
}

void validate_channel(const ChannelState &chan, const SystemConfig &cfg)
{
    if (chan.h.rows() != cfg.num_ues || chan.h.cols() != cfg.total_antennas())
        throw DimensionError("h", "channel shape " + std::to_string(chan.h.rows()) + "x" + std::to_string(chan.h.cols()) +
                                      " does not match N_U x n_R = " + std::to_string(cfg.num_ues) + "x" +
                                      std::to_string(cfg.total_antennas()));
    if (!all_finite(chan.h))
        throw DimensionError("h", "channel entries must be finite");
}

bool CommonStructure::contains(int l, int k) const { return member_index(l, k) >= 0; }

int CommonStructure::member_index(int l, int k) const
{
    const auto &s = sets[l];
    auto it = std::lower_bound(s.begin(), s.end(), k);
    if (it == s.end() || *it != k)
        return -1;
    return static_cast<int>(it - s.begin());
}

int CommonStructure::decode_position(int k, int l) const
{
    const auto &o = orders[k];
    auto it = std::find(o.begin(), o.end(), l);
    return it == o.end() ? -1 : static_cast<int>(it - o.begin());
}

CommonStructure build_orders(std::vector<UeSet> sets, int num_ues)
{
    if (num_ues <= 0)
        throw StructureError("build_orders: num_ues must be positive");
    for (auto &s : sets)
    {
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw StructureError("build_orders: a set lists the same UE twice");
        if (s.size() < 2)
            throw StructureError("build_orders: every set needs at least two UEs");
        if (s.front() < 0 || s.back() >= num_ues)
            throw StructureError("build_orders: UE index out of range");
    }
    {
        std::set<UeSet> seen;
        for (const auto &s : sets)
            if (!seen.insert(s).second)
                throw StructureError("build_orders: duplicate set");
    }

    CommonStructure out;
    out.num_ues = num_ues;
    out.sets = std::move(sets);
    out.membership.assign(num_ues, {});
    for (int l = 0; l < out.num_sets(); ++l)
        for (int k : out.sets[l])
            out.membership[k].push_back(l);

    out.orders.resize(num_ues);
    for (int k = 0; k < num_ues; ++k)
    {
        auto order = out.membership[k];
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return out.sets[a].size() > out.sets[b].size(); });
        out.orders[k] = std::move(order);
    }
    return out;
}

void validate_structure(const CommonStructure &s)
{
    const auto rebuilt = build_orders(s.sets, s.num_ues);
    if (rebuilt.sets != s.sets)
        throw StructureError("structure: sets are not in ascending UE order");
    if (rebuilt.membership != s.membership)
        throw StructureError("structure: membership lists disagree with sets");
    if (static_cast<int>(s.orders.size()) != s.num_ues)
        throw StructureError("structure: one decoding order per UE required");
    for (int k = 0; k < s.num_ues; ++k)
    {
        auto sorted = s.orders[k];
        std::sort(sorted.begin(), sorted.end());
        if (sorted != s.membership[k])
            throw StructureError("structure: decoding order is not a permutation of L_k");
        for (std::size_t m = 1; m < s.orders[k].size(); ++m)
            if (s.sets[s.orders[k][m - 1]].size() < s.sets[s.orders[k][m]].size())
                throw StructureError("structure: decoding order is not cardinality-descending");
    }
}

RateAllocation RateAllocation::zeros(const CommonStructure &s)
{
    RateAllocation r;
    r.private_rates.assign(s.num_ues, 0.0);
    r.common.resize(s.sets.size());
    for (std::size_t l = 0; l < s.sets.size(); ++l)
        r.common[l].assign(s.sets[l].size(), 0.0);
    return r;
}

double RateAllocation::ue_total(int k, const CommonStructure &s) const
{
    double total = private_rates[k];
    for (int l : s.membership[k])
        total += common[l][s.member_index(l, k)];
    return total;
}

double RateAllocation::min_ue_total(const CommonStructure &s) const
{
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < s.num_ues; ++k)
        best = std::min(best, ue_total(k, s));
    return best;
}

double RateAllocation::set_total(int l) const
{
    return std::accumulate(common[l].begin(), common[l].end(), 0.0);
}

DesignVariables DesignVariables::zeros(const SystemConfig &cfg, const CommonStructure &s)
{
    DesignVariables d;
    const int n = cfg.total_antennas();
    d.v_private.assign(cfg.num_ues, CVector::Zero(n));
    d.v_common.assign(s.sets.size(), CVector::Zero(n));
    for (int i = 0; i < cfg.num_rrhs; ++i)
        d.omega.push_back(CMatrix::Zero(cfg.antennas[i], cfg.antennas[i]));
    d.rates = RateAllocation::zeros(s);
    return d;
}

void validate_design(const DesignVariables &vars, const SystemConfig &cfg, const CommonStructure &s)
{
    const int n = cfg.total_antennas();
    if (static_cast<int>(vars.v_private.size()) != cfg.num_ues)
        throw DimensionError("v_private", "one precoder per UE required");
    if (vars.v_common.size() != s.sets.size())
        throw DimensionError("v_common", "one precoder per common set required");
    for (const auto &v : vars.v_private)
        if (v.size() != n || !all_finite(v))
            throw DimensionError("v_private", "precoders must be finite vectors of length n_R");
    for (const auto &v : vars.v_common)
        if (v.size() != n || !all_finite(v))
            throw DimensionError("v_common", "precoders must be finite vectors of length n_R");
    if (static_cast<int>(vars.omega.size()) != cfg.num_rrhs)
        throw DimensionError("omega", "one quantization covariance per RRH required");
    for (int i = 0; i < cfg.num_rrhs; ++i)
    {
        const auto &o = vars.omega[i];
        if (o.rows() != cfg.antennas[i] || o.cols() != cfg.antennas[i])
            throw DimensionError("omega", "shape must be n_{R,i} x n_{R,i}");
        if (!all_finite(o) || !is_hermitian_psd(o))
            throw DimensionError("omega", "must be Hermitian positive semidefinite");
    }
    const auto &r = vars.rates;
    if (static_cast<int>(r.private_rates.size()) != cfg.num_ues)
        throw DimensionError("rates.private", "one private rate per UE required");
    if (r.common.size() != s.sets.size())
        throw DimensionError("rates.common", "one rate list per common set required");
    for (std::size_t l = 0; l < s.sets.size(); ++l)
        if (r.common[l].size() != s.sets[l].size())
            throw DimensionError("rates.common", "common rates must align with set members");
    for (double x : r.private_rates)
        if (!(x >= 0.0) || !std::isfinite(x))
            throw DimensionError("rates.private", "rates must be finite and non-negative");
    for (const auto &row : r.common)
        for (double x : row)
            if (!(x >= 0.0) || !std::isfinite(x))
                throw DimensionError("rates.common", "rates must be finite and non-negative");
}

} // namespace rsma
