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

// Reference computations for tests. Everything here is written from the
// scalar definitions with explicit loops and never calls the library's
// evaluation code, so agreement between the two is meaningful.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rsma/model.hpp"

namespace oracle
{

using rsma::cplx;
using rsma::CMatrix;
using rsma::CVector;

inline constexpr double ln2 = 0.69314718055994530942;

inline bool member(const std::vector<int> &set, int k) { return std::find(set.begin(), set.end(), k) != set.end(); }

/// Position of set l in UE k's decoding order: larger sets first, then lower
/// set index.
inline int decode_rank(const std::vector<std::vector<int>> &sets, int k, int l)
{
    int rank = 0;
    for (int m = 0; m < static_cast<int>(sets.size()); ++m)
    {
        if (m == l || !member(sets[m], k))
            continue;
        if (sets[m].size() > sets[l].size() || (sets[m].size() == sets[l].size() && m < l))
            ++rank;
    }
    return rank;
}

/// Offsets of each RRH's antennas in the stacked vector.
inline std::vector<int> offsets(const rsma::SystemConfig &cfg)
{
    std::vector<int> out(cfg.num_rrhs + 1, 0);
    for (int i = 0; i < cfg.num_rrhs; ++i)
        out[i + 1] = out[i] + cfg.antennas[i];
    return out;
}

/// |sum_j conj(h_kj) v_j|^2
inline double rx_power(const CMatrix &h, int k, const CVector &v)
{
    cplx acc = 0.0;
    for (Eigen::Index j = 0; j < v.size(); ++j)
        acc += std::conj(h(k, j)) * v[j];
    return std::norm(acc);
}

inline double quantization(const rsma::SystemConfig &cfg, const CMatrix &h, int k,
                           const std::vector<CMatrix> &omega)
{
    const auto off = offsets(cfg);
    double q = 0.0;
    for (int i = 0; i < cfg.num_rrhs; ++i)
        for (int a = 0; a < cfg.antennas[i]; ++a)
            for (int b = 0; b < cfg.antennas[i]; ++b)
                q += (std::conj(h(k, off[i] + a)) * omega[i](a, b) * h(k, off[i] + b)).real();
    return q;
}

inline double nu_private(const rsma::SystemConfig &cfg, const CMatrix &h, const std::vector<std::vector<int>> &sets,
                         const rsma::DesignVariables &v, int k)
{
    double nu = cfg.noise_variance[k] + quantization(cfg, h, k, v.omega);
    for (int l = 0; l < static_cast<int>(sets.size()); ++l)
        if (!member(sets[l], k))
            nu += rx_power(h, k, v.v_common[l]);
    for (int m = 0; m < cfg.num_ues; ++m)
        if (m != k)
            nu += rx_power(h, k, v.v_private[m]);
    return nu;
}

inline double nu_common(const rsma::SystemConfig &cfg, const CMatrix &h, const std::vector<std::vector<int>> &sets,
                        const rsma::DesignVariables &v, int l, int k)
{
    double nu = cfg.noise_variance[k] + quantization(cfg, h, k, v.omega);
    const int mine = decode_rank(sets, k, l);
    for (int m = 0; m < static_cast<int>(sets.size()); ++m)
    {
        if (!member(sets[m], k))
            nu += rx_power(h, k, v.v_common[m]);
        else if (m != l && decode_rank(sets, k, m) > mine)
            nu += rx_power(h, k, v.v_common[m]);
    }
    for (int m = 0; m < cfg.num_ues; ++m)
        nu += rx_power(h, k, v.v_private[m]);
    return nu;
}

inline double sinr_rate(double signal, double nu) { return std::log2(1.0 + signal / nu); }

inline double private_rate(const rsma::SystemConfig &cfg, const CMatrix &h, const std::vector<std::vector<int>> &sets,
                           const rsma::DesignVariables &v, int k)
{
    return sinr_rate(rx_power(h, k, v.v_private[k]), nu_private(cfg, h, sets, v, k));
}

inline double common_rate(const rsma::SystemConfig &cfg, const CMatrix &h, const std::vector<std::vector<int>> &sets,
                          const rsma::DesignVariables &v, int l, int k)
{
    return sinr_rate(rx_power(h, k, v.v_common[l]), nu_common(cfg, h, sets, v, l, k));
}

inline CMatrix signal_cov(const rsma::SystemConfig &cfg, const rsma::DesignVariables &v, int i)
{
    const auto off = offsets(cfg);
    const int n = cfg.antennas[i];
    CMatrix c = CMatrix::Zero(n, n);
    auto add = [&](const CVector &x) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                c(a, b) += x[off[i] + a] * std::conj(x[off[i] + b]);
    };
    for (const auto &x : v.v_private)
        add(x);
    for (const auto &x : v.v_common)
        add(x);
    return c;
}

/// log2(|det(S + O)| / |det(O)|) through LU determinants.
inline double det_ratio_log2(const CMatrix &s, const CMatrix &o)
{
    const CMatrix sum = s + o;
    return std::log2(std::abs(sum.partialPivLu().determinant()) / std::abs(o.partialPivLu().determinant()));
}

inline double fronthaul(const rsma::SystemConfig &cfg, const rsma::DesignVariables &v, int i)
{
    const CMatrix s = signal_cov(cfg, v, i);
    if (s.cwiseAbs().maxCoeff() == 0.0)
        return 0.0;
    return det_ratio_log2(s, v.omega[i]);
}

inline double power(const rsma::SystemConfig &cfg, const rsma::DesignVariables &v, int i)
{
    const CMatrix s = signal_cov(cfg, v, i);
    double p = 0.0;
    for (int a = 0; a < cfg.antennas[i]; ++a)
        p += s(a, a).real() + v.omega[i](a, a).real();
    return p;
}

struct Feasibility
{
    double worst = 0.0; // largest relative excess lhs - rhs over max(1, |rhs|)
    std::string where;
    double r_min = std::numeric_limits<double>::infinity();
};

/// Re-evaluates rate, fronthaul and power constraints and non-negativity
/// from scratch.
inline Feasibility check_constraints(const rsma::SystemConfig &cfg, const CMatrix &h,
                                     const std::vector<std::vector<int>> &sets, const rsma::DesignVariables &v)
{
    Feasibility f;
    auto note = [&](double lhs, double rhs, const std::string &where) {
        const double excess = (lhs - rhs) / std::max(1.0, std::abs(rhs));
        if (!(excess <= f.worst))
        {
            f.worst = std::isnan(excess) ? std::numeric_limits<double>::infinity() : excess;
            f.where = where;
        }
    };
    const auto &r = v.rates;
    for (int k = 0; k < cfg.num_ues; ++k)
    {
        note(r.private_rates[k], private_rate(cfg, h, sets, v, k), "private " + std::to_string(k));
        note(-r.private_rates[k], 0.0, "nonneg private");
    }
    for (int l = 0; l < static_cast<int>(sets.size()); ++l)
    {
        double total = 0.0;
        for (double x : r.common[l])
        {
            total += x;
            note(-x, 0.0, "nonneg common");
        }
        for (int k : sets[l])
            note(total, common_rate(cfg, h, sets, v, l, k), "common " + std::to_string(l));
    }
    for (int i = 0; i < cfg.num_rrhs; ++i)
    {
        note(fronthaul(cfg, v, i), cfg.fronthaul_capacity[i], "fronthaul " + std::to_string(i));
        note(power(cfg, v, i), cfg.power_limit[i], "power " + std::to_string(i));
    }
    for (int k = 0; k < cfg.num_ues; ++k)
    {
        double total = r.private_rates[k];
        for (int l = 0; l < static_cast<int>(sets.size()); ++l)
            for (std::size_t j = 0; j < sets[l].size(); ++j)
                if (sets[l][j] == k)
                    total += r.common[l][j];
        f.r_min = std::min(f.r_min, total);
    }
    return f;
}

} // namespace oracle
