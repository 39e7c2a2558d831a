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

// Exact evaluation of the rate, fronthaul and power functionals of the
// max-min design problem.

#pragma once

#include <string>
#include <vector>

#include "rsma/model.hpp"

namespace rsma
{

/// log2 det(A + B) - log2 det(B). B must be Hermitian positive definite
/// (smallest eigenvalue above 1e-12); throws NumericalError otherwise.
double phi(const CMatrix &a, const CMatrix &b);
/// Scalar form, log2(1 + a / b).
double phi(double a, double b);

/// Interference-plus-noise seen by the private stream of UE k after all of
/// its common streams are cancelled.
double nu_private(int k, const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                  const SystemConfig &cfg);

/// Interference-plus-noise seen when UE k decodes common stream l: streams
/// decoded after l, common streams k never decodes, all private streams,
/// quantization noise and thermal noise. Throws StructureError if k is not
/// in sets[l].
double nu_common(int l, int k, const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                 const SystemConfig &cfg);

/// h_k^H Omega_bar h_k
double quantization_at_ue(int k, const DesignVariables &vars, const ChannelState &chan, const SystemConfig &cfg);

double private_rate(int k, const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                    const SystemConfig &cfg);
double common_rate(int l, int k, const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                   const SystemConfig &cfg);

/// E_i^H (sum of all precoder outer products) E_i
CMatrix signal_covariance(int i, const DesignVariables &vars, const SystemConfig &cfg);
/// signal_covariance + Omega_i
CMatrix transmit_covariance(int i, const DesignVariables &vars, const SystemConfig &cfg);

/// Fronthaul rate needed by RRH i in bits/symbol. Zero when RRH i carries no
/// signal; otherwise Omega_i must be positive definite.
double fronthaul_usage(int i, const DesignVariables &vars, const SystemConfig &cfg);

double transmit_power(int i, const DesignVariables &vars, const SystemConfig &cfg);

enum class ConstraintKind
{
    private_rate,
    common_rate,
    fronthaul,
    power,
    nonnegative_rate,
};

std::string to_string(ConstraintKind kind);

struct Violation
{
    ConstraintKind kind;
    int index = 0; // UE for private rates, set for common rates, RRH otherwise
    int ue = -1;   // decoding UE for common-rate constraints
    double lhs = 0.0;
    double rhs = 0.0;
};

struct RateReport
{
    std::vector<double> f_private;
    std::vector<std::vector<double>> f_common; // aligned with sets[l]
    std::vector<double> g_fronthaul;
    std::vector<double> p_power;
    std::vector<double> per_ue_rate;
    double r_min = 0.0;
    std::vector<Violation> violations;

    bool feasible() const { return violations.empty(); }
};

inline constexpr double kFeasibilityTolerance = 1e-6;

/// Evaluates every functional at `vars` and lists constraints exceeded by
/// more than `rel_tol * max(1, |rhs|)`. Violations are reported, never
/// thrown.
RateReport evaluate(const DesignVariables &vars, const ChannelState &chan, const CommonStructure &s,
                    const SystemConfig &cfg, double rel_tol = kFeasibilityTolerance);

} // namespace rsma
