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

// Solver for the convex per-iteration subproblem of the WMMSE loop: with the
// receive filters, weights and fronthaul surrogate matrices held fixed,
// maximize the minimum UE rate over precoders, quantization covariances and
// rate splits.
//
// The problem is put in epigraph form (maximize t) and solved with a primal
// log-barrier interior-point method. Complex precoders are stacked as real
// and imaginary parts; each Omega_i is parameterized by its lower-triangular
// Cholesky factor with a positive real diagonal, so every constraint stays
// convex in the real variables and iterates stay positive definite.

#pragma once

#include <string>
#include <vector>

#include "rsma/model.hpp"

namespace rsma
{

struct SubproblemData
{
    const ChannelState &channel;
    const CommonStructure &structure;
    const SystemConfig &config;
    const WmmseAuxiliaries &aux;
    const DesignVariables &warm_start;
};

struct SolverOptions
{
    double mu_initial = 1.0;
    double mu_final = 1e-8;
    double mu_factor = 10.0;
    /// Newton-decrement target at the last barrier stage.
    double tolerance = 1e-6;
    /// Half squared Newton decrement accepted at intermediate stages.
    double centering_tolerance = 1e-6;
    double armijo = 0.01;
    double backtrack = 0.5;
    int max_newton_per_stage = 100;
    int max_newton_total = 1500;
};

/// Barrier schedule used inside the outer loop, where every subproblem
/// starts from the previous iterate.
inline SolverOptions warm_start_options()
{
    SolverOptions o;
    o.mu_initial = 1e-3;
    o.mu_final = 1e-7;
    o.centering_tolerance = 1e-3;
    return o;
}

enum class SolveStatus
{
    converged,
    iteration_limit,
    line_search_failure,
    trivial, // no RRH can transmit; the zero point is the only solution
    initial, // trace entry of the starting point
};

std::string to_string(SolveStatus s);

struct SolverDiagnostics
{
    SolveStatus status = SolveStatus::converged;
    int newton_iterations = 0;
    double final_mu = 0.0;
    double max_violation = 0.0;
    /// Newton decrement of the final centering step.
    double stationarity = 0.0;
    /// True when the warm start beat the barrier iterate and was returned.
    bool kept_warm_start = false;
};

struct SubproblemSolution
{
    DesignVariables vars;
    double t = 0.0; // min over UEs of total rate at vars.rates
    SolverDiagnostics diagnostics;

    bool converged() const
    {
        return diagnostics.status == SolveStatus::converged || diagnostics.status == SolveStatus::trivial;
    }
};

enum class SlackKind
{
    epigraph,     // sum of UE k's rates - t
    private_rate, // surrogate private rate - R_{p,k}
    common_rate,  // surrogate common rate at UE k - sum over S_l of R_{c,.,l}
    fronthaul,    // C_i - surrogate fronthaul rate
    power,        // P_i - transmit power
    nonnegative,  // rate variable
};

std::string to_string(SlackKind kind);

struct SlackTag
{
    SlackKind kind;
    int index = 0; // UE, set, RRH or rate-variable index
    int ue = -1;
};

/// RRHs with zero fronthaul capacity or zero power budget transmit nothing;
/// their precoder rows and Omega_i are pinned to zero.
bool rrh_is_muted(const SystemConfig &cfg, int i);

/// The subproblem in standard form: real variables x and slack functions
/// s_j(x), strictly feasible iff every s_j(x) > 0.
class StandardForm
{
  public:
    explicit StandardForm(const SubproblemData &data);

    int num_variables() const { return num_vars_; }
    int num_constraints() const { return static_cast<int>(tags_.size()); }
    int num_precoder_reals() const { return num_precoder_reals_; }
    int num_omega_reals() const { return num_omega_reals_; }
    int num_rate_variables() const { return num_rate_vars_; }
    int epigraph_index() const { return t_index_; }
    const std::vector<SlackTag> &tags() const { return tags_; }
    bool trivial() const { return trivial_; }

    RVector pack(const DesignVariables &vars, double t) const;
    DesignVariables unpack(const RVector &x) const;

    /// All slack values. Entries are -inf outside the domain (a Cholesky
    /// diagonal that is not positive).
    RVector slacks(const RVector &x) const;
    /// Jacobian of the slacks, one row per constraint.
    RMatrix jacobian(const RVector &x) const;

    /// -t/mu - sum_j log s_j(x); +inf when x is not strictly feasible.
    double barrier(const RVector &x, double mu) const;
    void barrier_derivatives(const RVector &x, double mu, RVector &grad, RMatrix &hess) const;

    /// min over UEs of the total rate carried by x.
    double min_rate(const RVector &x) const;

  private:
    struct Block
    {
        std::vector<int> rows; // rows of the stacked n_R vector
        std::vector<int> re;   // variable index of Re z[row]
        std::vector<int> im;   // variable index of Im z[row], -1 if pinned
        int rrh = -1;          // Omega columns only
        int diag = -1;         // variable index of the Cholesky diagonal
    };
    struct RateRow
    {
        int ue = 0;
        int own = 0;              // block of the decoded stream
        std::vector<int> blocks;  // blocks whose power reaches the receiver undecoded
        std::vector<int> rate_vars;
        cplx u;
        double a = 0.0; // log2 w + 1/ln2
        double b = 0.0; // w / ln2
    };
    struct FronthaulRow
    {
        int rrh = 0;
        CMatrix sigma_inv;
        double constant = 0.0; // log2 det Sigma_i - n_{R,i}/ln2
        double capacity = 0.0;
        std::vector<int> blocks;
    };
    struct PowerRow
    {
        int rrh = 0;
        double limit = 0.0;
        std::vector<int> blocks;
    };

    void load_blocks(const RVector &x, CMatrix &z) const;
    void evaluate(const RVector &x, RVector &s, RMatrix *jac) const;

    const SystemConfig &cfg_;
    const CommonStructure &structure_;
    CMatrix h_; // N_U x n_R
    std::vector<AntennaRange> ranges_;
    std::vector<bool> muted_;
    bool trivial_ = false;

    std::vector<Block> blocks_;
    int num_private_blocks_ = 0;
    int num_common_blocks_ = 0;
    std::vector<int> omega_block_begin_; // per RRH, first Omega column block (-1 if muted)

    int num_vars_ = 0;
    int num_precoder_reals_ = 0;
    int num_omega_reals_ = 0;
    int num_rate_vars_ = 0;
    int rate_begin_ = 0;
    int t_index_ = 0;
    std::vector<int> private_rate_var_;
    std::vector<std::vector<int>> common_rate_var_; // aligned with sets
    std::vector<std::vector<int>> ue_rate_vars_;

    std::vector<RateRow> rate_rows_;
    std::vector<FronthaulRow> fronthaul_rows_;
    std::vector<PowerRow> power_rows_;
    std::vector<SlackTag> tags_;
    int first_nonneg_ = 0;
};

/// Builds the standard form of the subproblem.
StandardForm assemble(const SubproblemData &data);

/// Runs the barrier method from the warm start. Never returns a point whose
/// minimum UE rate is below the warm start's.
SubproblemSolution solve(const SubproblemData &data, const SolverOptions &opts = {});

struct KktReport
{
    /// Largest surrogate-constraint excess, recomputed with the bound
    /// functions of the wmmse module (absolute, normalized units).
    double max_surrogate_violation = 0.0;
    /// Largest excess over the exact constraints, relative as in evaluate().
    double max_exact_violation = 0.0;
    std::vector<SlackTag> violated;
    /// |t - min_k R_k|
    double epigraph_residual = 0.0;
    /// Barrier duality-gap bound m * mu at the final barrier parameter.
    double complementarity_gap = 0.0;
    bool feasible(double abs_tol = 1e-7) const { return max_surrogate_violation <= abs_tol; }
};

/// Independent re-evaluation of every constraint at a solution.
KktReport check_kkt(const SubproblemData &data, const SubproblemSolution &solution);

} // namespace rsma
