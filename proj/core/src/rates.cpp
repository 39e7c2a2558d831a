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

#include "rsma/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rsma
{

double phi(double a, double b)
{
    if (!(b > 1e-12))
        throw NumericalError("phi: B must be positive definite");
    if (a == 0.0)
        return 0.0;
    return std::max(0.0, std::log1p(a / b) / kLn2);
}

double phi(const CMatrix &a, const CMatrix &b)
{
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw NumericalError("phi: A and B must be square matrices of equal size");
    if (a.rows() == 1)
        return phi(a(0, 0).real(), b(0, 0).real());
    const double log_b = log2_det_hpd(b);
    if (a.isZero(0.0))
        return 0.0;
    return std::max(0.0, log2_det_hpd(a + b) - log_b);
}

namespace
{

void check_ue(int k, const SystemConfig &cfg)
{
    if (k < 0 || k >= cfg.num_ues)
        throw DimensionError("k", "UE index out of range");
}

double power_at(const CVector &h, const CVector &v) { return std::norm(inner(h, v)); }

} // namespace

double quantization_at_ue(int k, const DesignVariables &vars, const ChannelState &chan, const SystemConfig &cfg)
{
    double q = 0.0;
    const auto ranges = cfg.antenna_ranges();
    for (int i = 0; i < cfg.num_rrhs; ++i)
    {
        const CVector hk = chan.h.row(k).segment(ranges[i].offset, ranges[i].count).transpose();
        q += (hk.adjoint() * vars.omega[i] * hk)(0, 0).real();
    }
    return q;
}

double nu_private(int k, const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                  const SystemConfig &cfg)
{
    check_ue(k, cfg);
    const CVector hk = chan.ue(k);
    double nu = cfg.noise_variance[k] + quantization_at_ue(k, vars, chan, cfg);
    for (int l = 0; l < s.num_sets(); ++l)
        if (!s.contains(l, k))
            nu += power_at(hk, vars.v_common[l]);
    for (int m = 0; m < cfg.num_ues; ++m)
        if (m != k)
            nu += power_at(hk, vars.v_private[m]);
    return nu;
}

double nu_common(int l, int k, const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                 const SystemConfig &cfg)
{
    check_ue(k, cfg);
    if (l < 0 || l >= s.num_sets() || !s.contains(l, k))
        throw StructureError("nu_common: UE does not decode this common signal");
    const CVector hk = chan.ue(k);
    double nu = cfg.noise_variance[k] + quantization_at_ue(k, vars, chan, cfg);
    const auto &order = s.orders[k];
    for (std::size_t m = s.decode_position(k, l) + 1; m < order.size(); ++m)
        nu += power_at(hk, vars.v_common[order[m]]);
    for (int m = 0; m < s.num_sets(); ++m)
        if (!s.contains(m, k))
            nu += power_at(hk, vars.v_common[m]);
    for (int m = 0; m < cfg.num_ues; ++m)
        nu += power_at(hk, vars.v_private[m]);
    return nu;
}

double private_rate(int k, const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                    const SystemConfig &cfg)
{
    const double signal = power_at(chan.ue(k), vars.v_private[k]);
    return phi(signal, nu_private(k, vars, chan, s, cfg));
}

double common_rate(int l, int k, const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                   const SystemConfig &cfg)
{
    const double nu = nu_common(l, k, vars, chan, s, cfg);
    return phi(power_at(chan.ue(k), vars.v_common[l]), nu);
}

CMatrix signal_covariance(int i, const DesignVariables &vars, const SystemConfig &cfg)
{
    const auto r = cfg.antenna_range(i);
    CMatrix cov = CMatrix::Zero(r.count, r.count);
    auto add = [&](const CVector &v) {
        const CVector vi = v.segment(r.offset, r.count);
        cov.noalias() += vi * vi.adjoint();
    };
    for (const auto &v : vars.v_private)
        add(v);
    for (const auto &v : vars.v_common)
        add(v);
    return cov;
}

CMatrix transmit_covariance(int i, const DesignVariables &vars, const SystemConfig &cfg)
{
    return signal_covariance(i, vars, cfg) + vars.omega[i];
}

double fronthaul_usage(int i, const DesignVariables &vars, const SystemConfig &cfg)
{
    const CMatrix sig = signal_covariance(i, vars, cfg);
    if (sig.isZero(0.0))
        return 0.0;
    return phi(sig, vars.omega[i]);
}

double transmit_power(int i, const DesignVariables &vars, const SystemConfig &cfg)
{
    const auto r = cfg.antenna_range(i);
    double p = vars.omega[i].trace().real();
    for (const auto &v : vars.v_private)
        p += v.segment(r.offset, r.count).squaredNorm();
    for (const auto &v : vars.v_common)
        p += v.segment(r.offset, r.count).squaredNorm();
    return p;
}

std::string to_string(ConstraintKind kind)
{
    switch (kind)
    {
    case ConstraintKind::private_rate:
        return "private_rate";
    case ConstraintKind::common_rate:
        return "common_rate";
    case ConstraintKind::fronthaul:
        return "fronthaul";
    case ConstraintKind::power:
        return "power";
    case ConstraintKind::nonnegative_rate:
        return "nonnegative_rate";
    }
    return "unknown";
}

RateReport evaluate(const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                    const SystemConfig &cfg, double rel_tol)
{
    RateReport rep;
    auto check = [&](ConstraintKind kind, int index, int ue, double lhs, double rhs) {
        if (!(lhs - rhs <= rel_tol * std::max(1.0, std::abs(rhs))))
            rep.violations.push_back({kind, index, ue, lhs, rhs});
    };

    const auto &rates = vars.rates;
    for (int k = 0; k < cfg.num_ues; ++k)
    {
        rep.f_private.push_back(private_rate(k, vars, chan, s, cfg));
        check(ConstraintKind::private_rate, k, k, rates.private_rates[k], rep.f_private[k]);
        check(ConstraintKind::nonnegative_rate, k, k, -rates.private_rates[k], 0.0);
    }
    rep.f_common.resize(s.num_sets());
    for (int l = 0; l < s.num_sets(); ++l)
    {
        const double carried = rates.set_total(l);
        for (std::size_t j = 0; j < s.sets[l].size(); ++j)
        {
            const int k = s.sets[l][j];
            rep.f_common[l].push_back(common_rate(l, k, vars, chan, s, cfg));
            check(ConstraintKind::common_rate, l, k, carried, rep.f_common[l][j]);
            check(ConstraintKind::nonnegative_rate, l, k, -rates.common[l][j], 0.0);
        }
    }
    for (int i = 0; i < cfg.num_rrhs; ++i)
    {
        double g = std::numeric_limits<double>::infinity();
        try
        {
            g = fronthaul_usage(i, vars, cfg);
        }
        catch (const NumericalError &)
        {
        }
        rep.g_fronthaul.push_back(g);
        check(ConstraintKind::fronthaul, i, -1, g, cfg.fronthaul_capacity[i]);
        rep.p_power.push_back(transmit_power(i, vars, cfg));
        check(ConstraintKind::power, i, -1, rep.p_power[i], cfg.power_limit[i]);
    }
    for (int k = 0; k < cfg.num_ues; ++k)
        rep.per_ue_rate.push_back(rates.ue_total(k, s));
    rep.r_min = cfg.num_ues > 0 ? *std::min_element(rep.per_ue_rate.begin(), rep.per_ue_rate.end()) : 0.0;
    return rep;
}

} // namespace rsma
