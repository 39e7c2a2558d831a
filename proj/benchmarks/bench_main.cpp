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

#include <benchmark/benchmark.h>

#include "rsma/clustering.hpp"
#include "rsma/harness.hpp"
#include "rsma/subsolver.hpp"
#include "rsma/wmmse.hpp"

using namespace rsma;

namespace
{

NormalizedProblem reference_problem(int num_rrhs, int num_ues)
{
    ConfigPoint p;
    p.num_rrhs = num_rrhs;
    p.num_ues = num_ues;
    const auto sc = instance_scenario(1, p, ScenarioSpec{});
    return normalize_noise(sc.config, sc.channel);
}

void BM_Agglomerate(benchmark::State &state)
{
    const auto prob = reference_problem(4, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(agglomerate(prob.channel, prob.config.num_ues));
}
BENCHMARK(BM_Agglomerate)->Arg(8)->Arg(12)->Arg(32);

void BM_SubproblemSolve(benchmark::State &state)
{
    const auto prob = reference_problem(4, static_cast<int>(state.range(0)));
    const auto s = design_sets_hc(prob.channel, prob.config.num_ues);
    const auto warm = initial_point(prob.channel, s, prob.config, 1);
    const auto aux = update_auxiliaries(warm, prob.channel, s, prob.config);
    const SubproblemData data{prob.channel, s, prob.config, aux, warm};
    for (auto _ : state)
        benchmark::DoNotOptimize(solve(data, warm_start_options()));
}
BENCHMARK(BM_SubproblemSolve)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_BarrierDerivatives(benchmark::State &state)
{
    const auto prob = reference_problem(4, static_cast<int>(state.range(0)));
    const auto s = design_sets_hc(prob.channel, prob.config.num_ues);
    const auto warm = initial_point(prob.channel, s, prob.config, 1);
    const auto aux = update_auxiliaries(warm, prob.channel, s, prob.config);
    const StandardForm form(SubproblemData{prob.channel, s, prob.config, aux, warm});
    const RVector x = form.pack(warm, 0.5 * warm.rates.min_ue_total(s));
    RVector grad;
    RMatrix hess;
    for (auto _ : state)
    {
        form.barrier_derivatives(x, 1e-3, grad, hess);
        benchmark::DoNotOptimize(hess.data());
    }
}
BENCHMARK(BM_BarrierDerivatives)->Arg(8)->Arg(12);

void BM_RunWmmse(benchmark::State &state)
{
    const auto prob = reference_problem(4, 8);
    const auto scheme = static_cast<Scheme>(state.range(0));
    const auto s = design_sets(scheme, prob.channel, prob.config.num_ues, 1);
    WmmseOptions opts;
    opts.init_seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_wmmse(prob.channel, s, prob.config, opts));
    state.SetLabel(to_string(scheme));
}
BENCHMARK(BM_RunWmmse)
    ->Arg(static_cast<int>(Scheme::sdma))
    ->Arg(static_cast<int>(Scheme::rsma_sc))
    ->Arg(static_cast<int>(Scheme::rsma_hc))
    ->Unit(benchmark::kMillisecond)
    ->Iterations(1);

} // namespace
