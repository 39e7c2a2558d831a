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

#include "rsma/wmmse.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "rsma/random.hpp"

namespace rsma
{

double error_variance(cplx a, double nu, cplx u) { return std::norm(std::conj(u) * a - 1.0) + std::norm(u) * nu; }

double error_private(int k, const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                     const SystemConfig &cfg, cplx u)
{
    const cplx a = inner(chan.ue(k), vars.v_private[k]);
    return error_variance(a, nu_private(k, vars, chan, s, cfg), u);
}

double error_common(int l, int k, const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                    const SystemConfig &cfg, cplx u)
{
    const double nu = nu_common(l, k, vars, chan, s, cfg);
    return error_variance(inner(chan.ue(k), vars.v_common[l]), nu, u);
}

Filters update_filters(const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                       const SystemConfig &cfg)
{
    Filters f;
    for (int k = 0; k < cfg.num_ues; ++k)
    {
        const cplx a = inner(chan.ue(k), vars.v_private[k]);
        f.u_private.push_back(a / (nu_private(k, vars, chan, s, cfg) + std::norm(a)));
    }
    f.u_common.resize(s.num_sets());
    for (int l = 0; l < s.num_sets(); ++l)
        for (int k : s.sets[l])
        {
            const cplx a = inner(chan.ue(k), vars.v_common[l]);
            f.u_common[l].push_back(a / (nu_common(l, k, vars, chan, s, cfg) + std::norm(a)));
        }
    return f;
}

Weights update_weights(const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                       const SystemConfig &cfg, const Filters &filters)
{
    auto reciprocal = [](double e) {
        if (!(e > 0.0) || !std::isfinite(e))
            throw NumericalError("update_weights: error variance must be positive");
        return 1.0 / e;
    };
    Weights w;
    for (int k = 0; k < cfg.num_ues; ++k)
        w.w_private.push_back(reciprocal(error_private(k, vars, chan, s, cfg, filters.u_private[k])));
    w.w_common.resize(s.num_sets());
    for (int l = 0; l < s.num_sets(); ++l)
        for (std::size_t j = 0; j < s.sets[l].size(); ++j)
            w.w_common[l].push_back(
                reciprocal(error_common(l, s.sets[l][j], vars, chan, s, cfg, filters.u_common[l][j])));
    return w;
}

double rate_lower_bound(double w, double e) { return std::log2(w) + (1.0 - w * e) / kLn2; }

double lower_bound_private(int k, const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                           const SystemConfig &cfg, cplx u, double w)
{
    return rate_lower_bound(w, error_private(k, vars, chan, s, cfg, u));
}

double lower_bound_common(int l, int k, const DesignVariables &vars, const ChannelState &chan,
                          const CommonStructure &s, const SystemConfig &cfg, cplx u, double w)
{
    return rate_lower_bound(w, error_common(l, k, vars, chan, s, cfg, u));
}

double upper_bound_fronthaul(int i, const DesignVariables &vars, const CMatrix &sigma, const SystemConfig &cfg)
{
    const CMatrix cov = transmit_covariance(i, vars, cfg);
    const double log_sigma = log2_det_hpd(sigma);
    const double log_omega = log2_det_hpd(vars.omega[i]);
    Eigen::LLT<CMatrix> llt(0.5 * (sigma + sigma.adjoint()));
    const double trace = llt.solve(cov).trace().real();
    return log_sigma + (trace - static_cast<double>(sigma.rows())) / kLn2 - log_omega;
}

std::vector<CMatrix> update_sigma(const DesignVariables &vars, const SystemConfig &cfg)
{
    std::vector<CMatrix> out;
    for (int i = 0; i < cfg.num_rrhs; ++i)
        out.push_back(transmit_covariance(i, vars, cfg));
    return out;
}

WmmseAuxiliaries update_auxiliaries(const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                                    const SystemConfig &cfg)
{
    Filters f = update_filters(vars, chan, s, cfg);
    Weights w = update_weights(vars, chan, s, cfg, f);
    WmmseAuxiliaries aux;
    aux.u_private = std::move(f.u_private);
    aux.u_common = std::move(f.u_common);
    aux.w_private = std::move(w.w_private);
    aux.w_common = std::move(w.w_common);
    aux.sigma = update_sigma(vars, cfg);
    return aux;
}

namespace
{

constexpr double kInitialPowerShare = 0.45; // of P_i, for precoders and for Omega_i each

void set_initial_rates(DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                       const SystemConfig &cfg)
{
    for (int k = 0; k < cfg.num_ues; ++k)
        vars.rates.private_rates[k] = 0.5 * private_rate(k, vars, chan, s, cfg);
    for (int l = 0; l < s.num_sets(); ++l)
    {
        double weakest = std::numeric_limits<double>::infinity();
        for (int k : s.sets[l])
            weakest = std::min(weakest, common_rate(l, k, vars, chan, s, cfg));
        for (auto &r : vars.rates.common[l])
            r = 0.5 * weakest / static_cast<double>(s.sets[l].size());
    }
}

} // namespace

DesignVariables initial_point(const ChannelState &chan, const CommonStructure &s, const SystemConfig &cfg,
                              std::uint64_t seed)
{
    validate_config(cfg);
    validate_channel(chan, cfg);
    DesignVariables vars = DesignVariables::zeros(cfg, s);
    const int n = cfg.total_antennas();
    Rng rng(seed, Stream::initialization);
    auto draw = [&](CVector &v) {
        for (int m = 0; m < n; ++m)
            v[m] = rng.complex_normal();
    };
    for (auto &v : vars.v_private)
        draw(v);
    for (auto &v : vars.v_common)
        draw(v);

    const auto ranges = cfg.antenna_ranges();
    for (int i = 0; i < cfg.num_rrhs; ++i)
    {
        const auto r = ranges[i];
        if (rrh_is_muted(cfg, i))
        {
            for (auto &v : vars.v_private)
                v.segment(r.offset, r.count).setZero();
            for (auto &v : vars.v_common)
                v.segment(r.offset, r.count).setZero();
            continue;
        }
        double power = 0.0;
        for (const auto &v : vars.v_private)
            power += v.segment(r.offset, r.count).squaredNorm();
        for (const auto &v : vars.v_common)
            power += v.segment(r.offset, r.count).squaredNorm();
        const double scale = std::sqrt(kInitialPowerShare * cfg.power_limit[i] / power);
        for (auto &v : vars.v_private)
            v.segment(r.offset, r.count) *= scale;
        for (auto &v : vars.v_common)
            v.segment(r.offset, r.count) *= scale;
        vars.omega[i] = CMatrix::Identity(r.count, r.count) * (kInitialPowerShare * cfg.power_limit[i] / r.count);
    }

    for (int halvings = 0; halvings < 1100; ++halvings)
    {
        bool ok = true;
        for (int i = 0; i < cfg.num_rrhs && ok; ++i)
            if (!rrh_is_muted(cfg, i))
                ok = fronthaul_usage(i, vars, cfg) < cfg.fronthaul_capacity[i];
        if (ok)
            break;
        for (auto &v : vars.v_private)
            v *= 0.5;
        for (auto &v : vars.v_common)
            v *= 0.5;
    }
    set_initial_rates(vars, chan, s, cfg);
    return vars;
}

WmmseResult run_wmmse(const ChannelState &chan, const CommonStructure &s, const SystemConfig &cfg,
                      const WmmseOptions &opts)
{
    if (!(opts.epsilon > 0.0))
        throw std::invalid_argument("run_wmmse: epsilon must be positive");
    if (opts.max_iters < 2)
        throw std::invalid_argument("run_wmmse: max_iters must be at least 2");
    validate_structure(s);
    if (s.num_ues != cfg.num_ues)
        throw DimensionError("structure", "UE count does not match the configuration");

    using clock = std::chrono::steady_clock;
    auto started = clock::now();
    WmmseResult result;
    IterationTrace &trace = result.trace;
    DesignVariables vars = initial_point(chan, s, cfg, opts.init_seed);
    auto record = [&](double r_min, SolveStatus status, int newton) {
        const auto now = clock::now();
        trace.r_min.push_back(r_min);
        trace.status.push_back(status);
        trace.newton_iterations.push_back(newton);
        trace.wall_s.push_back(std::chrono::duration<double>(now - started).count());
        started = now;
    };
    record(vars.rates.min_ue_total(s), SolveStatus::initial, 0);

    while (trace.iterations() < opts.max_iters)
    {
        SubproblemSolution sol;
        try
        {
            const WmmseAuxiliaries aux = update_auxiliaries(vars, chan, s, cfg);
            sol = solve(SubproblemData{chan, s, cfg, aux, vars}, opts.solver);
        }
        catch (const std::exception &e)
        {
            throw SolverFailure(std::string("run_wmmse: subproblem failed: ") + e.what(), vars, trace);
        }
        const double previous = trace.r_min.back();
        vars = std::move(sol.vars);
        record(sol.t, sol.diagnostics.status, sol.diagnostics.newton_iterations);
        if (std::abs(sol.t - previous) <= opts.epsilon)
        {
            trace.converged = true;
            break;
        }
    }
    result.report = evaluate(vars, chan, s, cfg);
    result.vars = std::move(vars);
    return result;
}

} // namespace rsma
