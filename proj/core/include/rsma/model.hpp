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

// Domain types shared by every module. UE, RRH and set indices are 0-based.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rsma/linalg.hpp"

namespace rsma
{

/// A dimension or value constraint of an input was violated. `field()` names
/// the offending field.
class DimensionError : public std::invalid_argument
{
  public:
    DimensionError(std::string field, const std::string &what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field))
    {
    }
    const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
};

/// The common-signal sets violate subset/distinctness/cardinality rules.
class StructureError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// Contiguous antenna rows owned by one RRH inside the stacked n_R vector.
struct AntennaRange
{
    int offset = 0;
    int count = 0;
};

struct SystemConfig
{
    int num_rrhs = 0;
    int num_ues = 0;
    std::vector<int> antennas;             // per RRH
    std::vector<double> fronthaul_capacity; // bits/symbol, per RRH
    std::vector<double> power_limit;        // watts, per RRH
    std::vector<double> noise_variance;     // watts, per UE

    int total_antennas() const;
    /// Row ranges of each RRH in the stacked channel/precoder vectors.
    std::vector<AntennaRange> antenna_ranges() const;
    AntennaRange antenna_range(int rrh) const;
};

/// Throws DimensionError naming the first offending field.
void validate_config(const SystemConfig &cfg);

/// Row k holds the stacked channel h_k (not conjugated).
struct ChannelState
{
    CMatrix h;

    CVector ue(int k) const { return h.row(k).transpose(); }
};

void validate_channel(const ChannelState &chan, const SystemConfig &cfg);

using UeSet = std::vector<int>; // strictly ascending UE indices

struct CommonStructure
{
    int num_ues = 0;
    std::vector<UeSet> sets;                 // S_l
    std::vector<std::vector<int>> membership; // L_k, ascending set index
    std::vector<std::vector<int>> orders;     // decoding order at UE k

    int num_sets() const { return static_cast<int>(sets.size()); }
    bool contains(int l, int k) const;
    /// Position of UE k inside sets[l]; -1 when absent.
    int member_index(int l, int k) const;
    /// Position of set l inside orders[k]; -1 when l is not decoded by k.
    int decode_position(int k, int l) const;
};

/// Builds membership lists and decoding orders. Each UE decodes its sets in
/// non-increasing cardinality; equal cardinalities go by ascending set
/// index. Sets are normalized to ascending order.
CommonStructure build_orders(std::vector<UeSet> sets, int num_ues);

/// Checks the set rules and the order/membership consistency of an existing
/// structure.
void validate_structure(const CommonStructure &s);

struct RateAllocation
{
    std::vector<double> private_rates;       // R_{p,k}
    std::vector<std::vector<double>> common; // common[l][j]: rate of UE sets[l][j]

    static RateAllocation zeros(const CommonStructure &s);
    /// R_k = R_{p,k} + sum_{l in L_k} R_{c,k,l}
    double ue_total(int k, const CommonStructure &s) const;
    double min_ue_total(const CommonStructure &s) const;
    /// Sum of the common shares carried by s_{c,l}.
    double set_total(int l) const;
};

struct DesignVariables
{
    std::vector<CVector> v_private; // N_U vectors of length n_R
    std::vector<CVector> v_common;  // L vectors of length n_R
    std::vector<CMatrix> omega;     // per RRH, n_{R,i} x n_{R,i}
    RateAllocation rates;

    static DesignVariables zeros(const SystemConfig &cfg, const CommonStructure &s);
};

void validate_design(const DesignVariables &vars, const SystemConfig &cfg, const CommonStructure &s);

struct WmmseAuxiliaries
{
    std::vector<cplx> u_private;
    std::vector<std::vector<cplx>> u_common; // aligned with sets[l]
    std::vector<double> w_private;
    std::vector<std::vector<double>> w_common;
    std::vector<CMatrix> sigma; // per RRH
};

} // namespace rsma
