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

// WMMSE surrogate machinery and the outer majorize-minimize loop.
//
// For fixed precoders v and quantization covariances Omega, each rate
// function f admits the concave lower bound
//   log2 w + (1 - w e(u)) / ln 2,    e(u) = |conj(u) h^H v - 1|^2 + |u|^2 nu
// which is tight at the MMSE filter u = h^H v / (nu + |h^H v|^2) and
// w = 1/e(u). The fronthaul rate admits the upper bound
//   log2 det Sigma + (tr(Sigma^-1 cov) - n) / ln 2 - log2 det Omega
// tight at Sigma = cov. Alternating these closed-form updates with the convex
// subproblem gives a monotone sequence of minimum UE rates.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rsma/model.hpp"
#include "rsma/rates.hpp"
#include "rsma/subsolver.hpp"

namespace rsma
{

/// |conj(u) a - 1|^2 + |u|^2 nu for received amplitude a = h^H v.
double error_variance(cplx a, double nu, cplx u);

double error_private(int k, const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                     const SystemConfig &cfg, cplx u);
double error_common(int l, int k, const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                    const SystemConfig &cfg, cplx u);

struct Filters
{
    std::vector<cplx> u_private;
    std::vector<std::vector<cplx>> u_common; // aligned with sets[l]
};

struct Weights
{
    std::vector<double> w_private;
    std::vector<std::vector<double>> w_common;
};

/// MMSE receive filters, the minimizers of the error variances.
Filters update_filters(const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                       const SystemConfig &cfg);

/// w = 1/e at the given filters. Throws NumericalError on a zero error
/// variance.
Weights update_weights(const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                       const SystemConfig &cfg, const Filters &filters);

/// log2 w + (1 - w e) / ln 2
double rate_lower_bound(double w, double e);

double lower_bound_private(int k, const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                           const SystemConfig &cfg, cplx u, double w);
double lower_bound_common(int l, int k, const DesignVariables &vars, const ChannelState &chan,
                          const CommonStructure &s, const SystemConfig &cfg, cplx u, double w);

/// Upper bound on the fronthaul rate of RRH i for a positive definite
/// Sigma_i. Requires Omega_i positive definite.
double upper_bound_fronthaul(int i, const DesignVariables &vars, const CMatrix &sigma, const SystemConfig &cfg);

/// Sigma_i = transmit covariance of RRH i.
std::vector<CMatrix> update_sigma(const DesignVariables &vars, const SystemConfig &cfg);

/// All three closed-form updates at once.
WmmseAuxiliaries update_auxiliaries(const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                                    const SystemConfig &cfg);

struct WmmseOptions
{
    double epsilon = 1e-4; // bits/symbol
    int max_iters = 200;
    std::uint64_t init_seed = 0;
    SolverOptions solver = warm_start_options();
};

struct IterationTrace
{
    std::vector<double> r_min;         // entry 0 is the starting point
    std::vector<SolveStatus> status;   // per entry
    std::vector<int> newton_iterations; // per entry
    std::vector<double> wall_s;        // per entry
    bool converged = false;            // stopped on epsilon before max_iters

    int iterations() const { return static_cast<int>(r_min.size()); }
};

struct WmmseResult
{
    DesignVariables vars;
    RateReport report;
    IterationTrace trace;
};

/// Raised when a subproblem solve throws; carries the last feasible iterate.
class SolverFailure : public std::runtime_error
{
  public:
    SolverFailure(const std::string &what, DesignVariables last, IterationTrace trace)
        : std::runtime_error(what), last_feasible(std::move(last)), trace(std::move(trace))
    {
    }
    DesignVariables last_feasible;
    IterationTrace trace;
};

/// Strictly feasible starting point: Gaussian precoders and a scaled
/// identity Omega_i filling 90% of each power budget, precoders halved until
/// every fronthaul constraint holds strictly; rates at half of the tight
/// bounds.
DesignVariables initial_point(const ChannelState &chan, const CommonStructure &s, const SystemConfig &cfg,
                              std::uint64_t seed);

/// Alternates the closed-form auxiliary updates with the convex subproblem
/// until the minimum UE rate changes by at most epsilon.
WmmseResult run_wmmse(const ChannelState &chan, const CommonStructure &s, const SystemConfig &cfg,
                      const WmmseOptions &opts = {});

} // namespace rsma
