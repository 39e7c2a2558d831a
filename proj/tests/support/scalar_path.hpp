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

// Subproblem constraints for single-antenna RRHs written with scalar
// quantization noise omega_i instead of covariance matrices.

#pragma once

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rsma/subsolver.hpp"

namespace oracle
{

struct ScalarSlacks
{
    std::vector<double> epigraph, private_rate, fronthaul, power, nonnegative;
    std::vector<std::vector<double>> common_rate; // [l][member]
};

inline ScalarSlacks scalar_slacks(const rsma::SubproblemData &d, const rsma::DesignVariables &v, double t)
{
    const auto &cfg = d.config;
    const auto &sets = d.structure.sets;
    const auto &h = d.channel.h;
    const auto &aux = d.aux;
    ScalarSlacks out;
    auto bound = [](double w, cplx u, cplx a, double nu) {
        const double e = std::norm(std::conj(u) * a - 1.0) + std::norm(u) * nu;
        return std::log2(w) + (1.0 - w * e) / ln2;
    };
    auto amp = [&](int k, const CVector &x) {
        cplx acc = 0.0;
        for (int i = 0; i < cfg.num_rrhs; ++i)
            acc += std::conj(h(k, i)) * x[i];
        return acc;
    };
    std::vector<double> omega(cfg.num_rrhs);
    for (int i = 0; i < cfg.num_rrhs; ++i)
        omega[i] = v.omega[i](0, 0).real();

    for (int k = 0; k < cfg.num_ues; ++k)
    {
        double total = v.rates.private_rates[k];
        for (int l = 0; l < static_cast<int>(sets.size()); ++l)
            for (std::size_t j = 0; j < sets[l].size(); ++j)
                if (sets[l][j] == k)
                    total += v.rates.common[l][j];
        out.epigraph.push_back(total - t);
    }
    for (int k = 0; k < cfg.num_ues; ++k)
        out.private_rate.push_back(bound(aux.w_private[k], aux.u_private[k], amp(k, v.v_private[k]),
                                         nu_private(cfg, h, sets, v, k)) -
                                   v.rates.private_rates[k]);
    out.common_rate.resize(sets.size());
    for (int l = 0; l < static_cast<int>(sets.size()); ++l)
    {
        double carried = 0.0;
        for (double r : v.rates.common[l])
            carried += r;
        for (std::size_t j = 0; j < sets[l].size(); ++j)
        {
            const int k = sets[l][j];
            out.common_rate[l].push_back(bound(aux.w_common[l][j], aux.u_common[l][j], amp(k, v.v_common[l]),
                                               nu_common(cfg, h, sets, v, l, k)) -
                                         carried);
        }
    }
    for (int i = 0; i < cfg.num_rrhs; ++i)
    {
        double sig = 0.0;
        for (const auto &x : v.v_private)
            sig += std::norm(x[i]);
        for (const auto &x : v.v_common)
            sig += std::norm(x[i]);
        const double s = aux.sigma[i](0, 0).real();
        const double g = std::log2(s) + ((sig + omega[i]) / s - 1.0) / ln2 - std::log2(omega[i]);
        out.fronthaul.push_back(cfg.fronthaul_capacity[i] - g);
        out.power.push_back(cfg.power_limit[i] - sig - omega[i]);
    }
    for (double r : v.rates.private_rates)
        out.nonnegative.push_back(r);
    for (const auto &row : v.rates.common)
        for (double r : row)
            out.nonnegative.push_back(r);
    return out;
}

} // namespace oracle
