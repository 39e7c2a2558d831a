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

#include "rsma/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rsma/random.hpp"

namespace rsma
{

double dissimilarity(const CVector &hk, const CVector &hm)
{
    const double nk = hk.norm();
    const double nm = hm.norm();
    if (!(nk > 0.0) || !(nm > 0.0))
        throw std::invalid_argument("dissimilarity: channel vectors must be nonzero");
    // both orders, so that rounding cannot break symmetry
    const double inner = 0.5 * (std::abs(hk.dot(hm)) + std::abs(hm.dot(hk)));
    const double cosine = inner / (nk * nm);
    return std::clamp(1.0 - cosine, 0.0, 1.0);
}

RMatrix dissimilarity_matrix(const ChannelState &chan)
{
    const int n = static_cast<int>(chan.h.rows());
    RMatrix d = RMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k)
        for (int m = k + 1; m < n; ++m)
            d(k, m) = d(m, k) = dissimilarity(chan.ue(k), chan.ue(m));
    return d;
}

Dendrogram agglomerate(const RMatrix &dist)
{
    const int n = static_cast<int>(dist.rows());
    if (n < 2 || dist.cols() != n)
        throw std::invalid_argument("agglomerate: need a square matrix over at least two UEs");

    // clusters kept sorted by their lowest member
    std::vector<UeSet> clusters;
    for (int k = 0; k < n; ++k)
        clusters.push_back({k});

    auto linkage = [&](const UeSet &a, const UeSet &b) {
        double worst = 0.0;
        for (int x : a)
            for (int y : b)
                worst = std::max(worst, dist(x, y));
        return worst;
    };

    Dendrogram out;
    out.num_ues = n;
    while (clusters.size() > 1)
    {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 1;
        for (std::size_t i = 0; i < clusters.size(); ++i)
            for (std::size_t j = i + 1; j < clusters.size(); ++j)
            {
                const double d = linkage(clusters[i], clusters[j]);
                // strict comparison keeps the first pair in (i, j) order, which
                // is the lexicographic order of the lowest members
                if (d < best)
                {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        Merge m;
        m.left = clusters[bi];
        m.right = clusters[bj];
        m.merged = m.left;
        m.merged.insert(m.merged.end(), m.right.begin(), m.right.end());
        std::sort(m.merged.begin(), m.merged.end());
        m.distance = best;
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
        clusters[bi] = m.merged;
        out.merges.push_back(std::move(m));
    }
    return out;
}

Dendrogram agglomerate(const ChannelState &chan, int num_ues)
{
    if (chan.h.rows() != num_ues)
        throw DimensionError("h", "channel rows must equal num_ues");
    return agglomerate(dissimilarity_matrix(chan));
}

std::string to_string(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::sdma:
        return "sdma";
    case Scheme::rsma_sc:
        return "rsma-sc";
    case Scheme::rsma_rc:
        return "rsma-rc";
    case Scheme::rsma_hc:
        return "rsma-hc";
    }
    return "unknown";
}

Scheme parse_scheme(const std::string &name)
{
    for (Scheme s : {Scheme::sdma, Scheme::rsma_sc, Scheme::rsma_rc, Scheme::rsma_hc})
        if (to_string(s) == name)
            return s;
    throw std::invalid_argument("unknown scheme '" + name + "' (expected sdma, rsma-sc, rsma-rc or rsma-hc)");
}

CommonStructure design_sets_hc(const ChannelState &chan, int num_ues)
{
    const Dendrogram d = agglomerate(chan, num_ues);
    std::vector<UeSet> sets;
    for (const auto &m : d.merges)
        sets.push_back(m.merged);
    return build_orders(std::move(sets), num_ues);
}

CommonStructure design_sets_sc(int num_ues)
{
    if (num_ues < 2)
        throw std::invalid_argument("design_sets_sc: need at least two UEs");
    UeSet all(num_ues);
    std::iota(all.begin(), all.end(), 0);
    return build_orders({all}, num_ues);
}

CommonStructure design_sets_sdma(int num_ues) { return build_orders({}, num_ues); }

CommonStructure design_sets_rc(int num_ues, std::uint64_t seed)
{
    if (num_ues < 2)
        throw std::invalid_argument("design_sets_rc: need at least two UEs");
    Rng rng(seed, Stream::set_design);
    std::vector<UeSet> sets;
    for (int size = 2; size <= num_ues; ++size)
    {
        // partial Fisher-Yates over 0..N_U-1
        std::vector<int> pool(num_ues);
        std::iota(pool.begin(), pool.end(), 0);
        for (int j = 0; j < size; ++j)
        {
            const auto pick = j + static_cast<int>(rng.below(static_cast<std::uint64_t>(num_ues - j)));
            std::swap(pool[j], pool[pick]);
        }
        UeSet s(pool.begin(), pool.begin() + size);
        std::sort(s.begin(), s.end());
        sets.push_back(std::move(s));
    }
    return build_orders(std::move(sets), num_ues);
}

CommonStructure design_sets(Scheme scheme, const ChannelState &chan, int num_ues, std::uint64_t seed)
{
    switch (scheme)
    {
    case Scheme::sdma:
        return design_sets_sdma(num_ues);
    case Scheme::rsma_sc:
        return design_sets_sc(num_ues);
    case Scheme::rsma_rc:
        return design_sets_rc(num_ues, seed);
    case Scheme::rsma_hc:
        return design_sets_hc(chan, num_ues);
    }
    throw std::invalid_argument("design_sets: unknown scheme");
}

bool is_laminar(const std::vector<UeSet> &sets)
{
    for (std::size_t a = 0; a < sets.size(); ++a)
        for (std::size_t b = a + 1; b < sets.size(); ++b)
        {
            const auto &x = sets[a];
            const auto &y = sets[b];
            std::vector<int> common;
            std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
            if (!common.empty() && common.size() != x.size() && common.size() != y.size())
                return false;
        }
    return true;
}

} // namespace rsma
