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

// Common-signal set design. The proposed scheme groups UEs with aligned
// channel directions by complete-linkage agglomerative clustering and uses
// every merged cluster as a common-signal set (N_U - 1 sets, including the
// full UE set). Baselines: no common signal (SDMA), one common signal for
// everybody (single-common RSMA) and random sets of sizes 2..N_U.
//
// The ideal design with every subset of two or more UEs needs
// 2^N_U - 1 - N_U common signals, which makes the per-iteration problem grow
// as O(N_R 2^N_U); it is intentionally not offered here.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsma/model.hpp"

namespace rsma
{

/// 1 - |h_k^H h_m| / (|h_k| |h_m|), in [0, 1]. Throws std::invalid_argument
/// for a zero vector.
double dissimilarity(const CVector &hk, const CVector &hm);

/// Symmetric N_U x N_U dissimilarity matrix with a zero diagonal.
RMatrix dissimilarity_matrix(const ChannelState &chan);

struct Merge
{
    UeSet left;   // cluster with the smaller lowest UE index
    UeSet right;
    UeSet merged;
    double distance = 0.0;
};

struct Dendrogram
{
    int num_ues = 0;
    std::vector<Merge> merges; // in merge order, N_U - 1 entries
};

/// Complete-linkage agglomeration from singletons. Among pairs at the minimum
/// distance the pair with the lexicographically smallest (lowest UE of the
/// first cluster, lowest UE of the second) is merged.
Dendrogram agglomerate(const RMatrix &dissimilarities);
Dendrogram agglomerate(const ChannelState &chan, int num_ues);

enum class Scheme
{
    sdma,
    rsma_sc,
    rsma_rc,
    rsma_hc,
};

std::string to_string(Scheme scheme);
/// Accepts "sdma", "rsma-sc", "rsma-rc", "rsma-hc".
Scheme parse_scheme(const std::string &name);

/// Merged clusters of the dendrogram, in merge order.
CommonStructure design_sets_hc(const ChannelState &chan, int num_ues);
CommonStructure design_sets_sc(int num_ues);
CommonStructure design_sets_sdma(int num_ues);
/// Set l (0-based) holds l + 2 UEs drawn uniformly without replacement.
CommonStructure design_sets_rc(int num_ues, std::uint64_t seed);

CommonStructure design_sets(Scheme scheme, const ChannelState &chan, int num_ues, std::uint64_t seed);

/// Any two sets are nested or disjoint.
bool is_laminar(const std::vector<UeSet> &sets);

} // namespace rsma
