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

// Acceptance run. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.
//
//   acceptance <path to rsma binary> <scratch directory>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "finite_differences.hpp"
#include "instances.hpp"
#include "oracles.hpp"
#include "rsma/clustering.hpp"
#include "rsma/harness.hpp"
#include "rsma/rates.hpp"
#include "rsma/scenario.hpp"
#include "rsma/subsolver.hpp"
#include "rsma/wmmse.hpp"

using namespace rsma;
namespace fs = std::filesystem;

namespace
{

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0)
{
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// criteria finish out of order; lines are printed by number at the end
std::map<int, std::string> lines;
int failures = 0;

void report(int id, bool pass, const std::string &detail)
{
    if (!pass)
        ++failures;
    char head[40];
    std::snprintf(head, sizeof head, "criterion %2d: %s  ", id, pass ? "PASS" : "FAIL");
    lines[id] = head + detail;
    std::fprintf(stderr, "%s\n", lines[id].c_str());
}

std::string fmt(const char *format, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, format, a);
    return buf;
}

struct MeanSe
{
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_se(const std::vector<double> &xs)
{
    MeanSe out;
    const double n = static_cast<double>(xs.size());
    out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : xs)
        ss += (x - out.mean) * (x - out.mean);
    out.se = n > 1 ? std::sqrt(ss / (n - 1)) / std::sqrt(n) : 0.0;
    return out;
}

// Worst oracle violation seen over every returned solution.
struct FeasibilityLog
{
    double worst = 0.0;
    std::string where;
    int checked = 0;

    void add(const SystemConfig &cfg, const ChannelState &chan, const CommonStructure &s, const DesignVariables &v,
             const std::string &label)
    {
        const auto f = oracle::check_constraints(cfg, chan.h, s.sets, v);
        ++checked;
        if (!(f.worst <= worst))
        {
            worst = std::isnan(f.worst) ? INFINITY : f.worst;
            where = label + " (" + f.where + ")";
        }
    }
};

FeasibilityLog feasibility;

// ---------------------------------------------------------------------------

void surrogate_tightness()
{
    const auto t0 = clock_type::now();
    std::mt19937_64 g(101);
    double worst_f = 0.0, worst_g = 0.0;
    for (int trial = 0; trial < 100; ++trial)
    {
        const auto inst = testing_support::random_instance(g, 4, 6, 2, 4);
        const auto &cfg = inst.cfg;
        const auto &s = inst.structure;
        const auto aux = update_auxiliaries(inst.vars, inst.chan, s, cfg);
        for (int k = 0; k < cfg.num_ues; ++k)
        {
            const double lb = lower_bound_private(k, inst.vars, inst.chan, s, cfg, aux.u_private[k], aux.w_private[k]);
            worst_f = std::max(worst_f, std::abs(lb - oracle::private_rate(cfg, inst.chan.h, s.sets, inst.vars, k)));
        }
        for (int l = 0; l < s.num_sets(); ++l)
            for (std::size_t j = 0; j < s.sets[l].size(); ++j)
            {
                const int k = s.sets[l][j];
                const double lb =
                    lower_bound_common(l, k, inst.vars, inst.chan, s, cfg, aux.u_common[l][j], aux.w_common[l][j]);
                worst_f =
                    std::max(worst_f, std::abs(lb - oracle::common_rate(cfg, inst.chan.h, s.sets, inst.vars, l, k)));
            }
        for (int i = 0; i < cfg.num_rrhs; ++i)
        {
            const double ub = upper_bound_fronthaul(i, inst.vars, aux.sigma[i], cfg);
            worst_g = std::max(worst_g, std::abs(ub - oracle::fronthaul(cfg, inst.vars, i)));
        }
    }
    const double secs = seconds_since(t0);
    report(1, worst_f <= 1e-9 && worst_g <= 1e-9 && secs < 60.0,
           "max |f~ - f| = " + fmt("%.2e", worst_f) + ", max |g~ - g| = " + fmt("%.2e", worst_g) + ", " +
               fmt("%.1f s", secs));
}

void bound_direction()
{
    std::mt19937_64 g(202);
    std::normal_distribution<double> n01(0.0, 1.0);
    double worst_f = -INFINITY, worst_g = -INFINITY; // f~ - f and g - g~
    long checks = 0;
    for (int trial = 0; trial < 100; ++trial)
    {
        const auto inst = testing_support::random_instance(g, 4, 6, 2, 4);
        const auto &cfg = inst.cfg;
        const auto &s = inst.structure;
        std::vector<double> fp(cfg.num_ues), fh(cfg.num_rrhs);
        std::vector<std::vector<double>> fc(s.num_sets());
        for (int k = 0; k < cfg.num_ues; ++k)
            fp[k] = oracle::private_rate(cfg, inst.chan.h, s.sets, inst.vars, k);
        for (int l = 0; l < s.num_sets(); ++l)
            for (int k : s.sets[l])
                fc[l].push_back(oracle::common_rate(cfg, inst.chan.h, s.sets, inst.vars, l, k));
        for (int i = 0; i < cfg.num_rrhs; ++i)
            fh[i] = oracle::fronthaul(cfg, inst.vars, i);

        for (int draw = 0; draw < 1000; ++draw)
        {
            auto weight = [&] { return std::exp(2.0 * n01(g)); };
            auto filter = [&] { return testing_support::cn(g, std::exp(2.0 * n01(g))); };
            for (int k = 0; k < cfg.num_ues; ++k)
            {
                const double lb = lower_bound_private(k, inst.vars, inst.chan, s, cfg, filter(), weight());
                worst_f = std::max(worst_f, lb - fp[k]);
                ++checks;
            }
            for (int l = 0; l < s.num_sets(); ++l)
                for (std::size_t j = 0; j < s.sets[l].size(); ++j)
                {
                    const double lb =
                        lower_bound_common(l, s.sets[l][j], inst.vars, inst.chan, s, cfg, filter(), weight());
                    worst_f = std::max(worst_f, lb - fc[l][j]);
                    ++checks;
                }
            for (int i = 0; i < cfg.num_rrhs; ++i)
            {
                const CMatrix sigma = testing_support::random_pd(g, cfg.antennas[i], std::exp(n01(g)));
                worst_g = std::max(worst_g, fh[i] - upper_bound_fronthaul(i, inst.vars, sigma, cfg));
                ++checks;
            }
        }
    }
    report(2, worst_f <= 1e-9 && worst_g <= 1e-9,
           std::to_string(checks) + " checks, max(f~ - f) = " + fmt("%.2e", worst_f) +
               ", max(g - g~) = " + fmt("%.2e", worst_g));
}

// R_min for one UE and one single-antenna RRH, dense grid over the quantization
// noise followed by ternary refinement around the best cell.
double single_link_brute_force(double gain, double capacity, double power)
{
    // the rate grows with p, so for a given omega the best p saturates power or fronthaul
    auto value = [&](double log_om) {
        const double om = std::exp(log_om);
        const double p = std::max(0.0, std::min(power - om, om * (std::exp2(capacity) - 1.0)));
        return std::log2(1.0 + gain * p / (gain * om + 1.0));
    };
    const double hi = std::log(power), lo = hi - 60.0;
    const int n = 200000;
    double best = 0.0;
    int best_j = 0;
    for (int j = 0; j <= n; ++j)
    {
        const double v = value(lo + (hi - lo) * j / n);
        if (v > best)
        {
            best = v;
            best_j = j;
        }
    }
    double a = lo + (hi - lo) * std::max(0, best_j - 1) / n, b = lo + (hi - lo) * std::min(n, best_j + 1) / n;
    for (int it = 0; it < 200; ++it)
    {
        const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
        if (value(m1) < value(m2))
            a = m1;
        else
            b = m2;
    }
    return std::max(best, value(0.5 * (a + b)));
}

void single_link_oracle()
{
    const auto t0 = clock_type::now();
    std::mt19937_64 g(303);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    int not_converged = 0;
    for (int trial = 0; trial < 20; ++trial)
    {
        SystemConfig cfg;
        cfg.num_rrhs = 1;
        cfg.num_ues = 1;
        cfg.antennas = {1};
        cfg.fronthaul_capacity = {1.0 + 9.0 * u(g)};
        cfg.power_limit = {1.0 + 9.0 * u(g)};
        cfg.noise_variance = {1.0};
        ChannelState chan{CMatrix::Constant(1, 1, testing_support::cn(g, std::pow(10.0, 3.0 * u(g) - 1.0)))};
        const auto s = build_orders({}, 1);
        WmmseOptions opts;
        opts.init_seed = trial;
        const auto result = run_wmmse(chan, s, cfg, opts);
        feasibility.add(cfg, chan, s, result.vars, "single link " + std::to_string(trial));
        if (!result.trace.converged)
            ++not_converged;
        const double expected =
            single_link_brute_force(std::norm(chan.h(0, 0)), cfg.fronthaul_capacity[0], cfg.power_limit[0]);
        worst = std::max(worst, std::abs(result.report.r_min - expected));
    }
    const double secs = seconds_since(t0);
    report(5, worst <= 1e-2 && secs < 300.0,
           "20 channels, max |R_min - grid| = " + fmt("%.2e", worst) + " bits/symbol, " +
               std::to_string(not_converged) + " hit the iteration cap, " + fmt("%.1f s", secs));
}

void gradient_correctness()
{
    std::mt19937_64 g(404);
    double worst = 0.0;
    long entries = 0;
    for (int trial = 0; trial < 20; ++trial)
    {
        auto inst = testing_support::random_instance(g, 4, 6, 2, 4);
        const auto aux = update_auxiliaries(inst.vars, inst.chan, inst.structure, inst.cfg);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (auto &r : inst.vars.rates.private_rates)
            r = u(g);
        for (auto &row : inst.vars.rates.common)
            for (auto &r : row)
                r = 0.5 * u(g);
        const StandardForm form(SubproblemData{inst.chan, inst.structure, inst.cfg, aux, inst.vars});
        const RVector x = form.pack(inst.vars, u(g));
        worst = std::max(worst, testing_support::check_jacobian(form, x).worst_relative);
        entries += static_cast<long>(form.num_constraints()) * form.num_variables();
    }
    report(6, worst <= 1e-4,
           std::to_string(entries) + " Jacobian entries, max relative error " + fmt("%.2e", worst));
}

void clustering_structure()
{
    std::mt19937_64 g(505);
    int bad = 0, cases = 0;
    for (int num_ues = 2; num_ues <= 12; ++num_ues)
        for (int trial = 0; trial < 100; ++trial)
        {
            ++cases;
            SystemConfig cfg;
            cfg.num_ues = num_ues;
            cfg.num_rrhs = 4;
            cfg.antennas = {1, 1, 1, 1};
            const auto chan = testing_support::random_channel(g, cfg);
            const auto dg = agglomerate(chan, num_ues);
            const auto s = design_sets_hc(chan, num_ues);
            UeSet all(num_ues);
            std::iota(all.begin(), all.end(), 0);
            bool ok = s.num_sets() == num_ues - 1 && is_laminar(s.sets) &&
                      std::find(s.sets.begin(), s.sets.end(), all) != s.sets.end();
            for (int l = 0; l < s.num_sets() && ok; ++l)
            {
                ok = s.sets[l].size() >= 2;
                for (int m = l + 1; m < s.num_sets() && ok; ++m)
                    ok = s.sets[l] != s.sets[m];
            }
            for (std::size_t j = 1; j < dg.merges.size() && ok; ++j)
                ok = dg.merges[j].distance >= dg.merges[j - 1].distance;
            if (!ok)
                ++bad;
        }
    report(7, bad == 0, std::to_string(cases) + " channel draws, " + std::to_string(bad) + " violate the structure");
}

// ---------------------------------------------------------------------------

struct Run
{
    double r_min = 0.0;
    bool converged = false;
    int iterations = 0;
    bool monotone = true;
    double worst_drop = 0.0;
};

Run run_one(std::uint64_t seed, const ConfigPoint &point, Scheme scheme)
{
    const auto scenario = instance_scenario(seed, point, ScenarioSpec{});
    WmmseOptions opts;
    opts.init_seed = seed;
    CommonStructure s;
    const auto result = solve_scenario(scenario, scheme, seed, opts, &s);
    const auto norm = normalize_noise(scenario.config, scenario.channel);
    feasibility.add(norm.config, norm.channel, s, result.vars,
                    to_string(scheme) + " seed " + std::to_string(seed) + " N_U " + std::to_string(point.num_ues) +
                        " P " + fmt("%g", point.power_dbm));
    Run r;
    r.r_min = result.report.r_min;
    r.converged = result.trace.converged;
    r.iterations = result.trace.iterations() - 1;
    for (std::size_t j = 1; j < result.trace.r_min.size(); ++j)
        r.worst_drop = std::max(r.worst_drop, result.trace.r_min[j - 1] - result.trace.r_min[j]);
    r.monotone = r.worst_drop <= 1e-6;
    return r;
}

using RunKey = std::pair<double, Scheme>; // axis value, scheme
using RunTable = std::map<RunKey, std::vector<Run>>;

RunTable sweep(const std::vector<double> &axis, bool axis_is_power, const std::vector<Scheme> &schemes, int seeds,
               ConfigPoint base, const char *label)
{
    RunTable table;
    const auto t0 = clock_type::now();
    const std::size_t total = axis.size() * schemes.size() * seeds;
    std::size_t done = 0;
    for (int seed = 0; seed < seeds; ++seed)
        for (double a : axis)
        {
            ConfigPoint p = base;
            if (axis_is_power)
                p.power_dbm = a;
            else
                p.num_ues = static_cast<int>(a);
            for (Scheme scheme : schemes)
            {
                table[{a, scheme}].push_back(run_one(seed, p, scheme));
                ++done;
            }
        }
    std::fprintf(stderr, "%s: %zu of %zu runs in %.0f s\n", label, done, total, seconds_since(t0));
    return table;
}

std::vector<double> differences(const std::vector<Run> &a, const std::vector<Run> &b)
{
    std::vector<double> d;
    for (std::size_t j = 0; j < a.size(); ++j)
        d.push_back(a[j].r_min - b[j].r_min);
    return d;
}

RunTable fig1;

void fig1_trend()
{
    const std::vector<double> powers = {23.0, 33.0, 43.0};
    const std::vector<Scheme> schemes = {Scheme::sdma, Scheme::rsma_sc, Scheme::rsma_rc, Scheme::rsma_hc};
    fig1 = sweep(powers, true, schemes, 50, ConfigPoint{}, "four RRHs, eight UEs");

    bool pass = true;
    std::ostringstream detail;
    const std::pair<Scheme, Scheme> chain[] = {
        {Scheme::rsma_hc, Scheme::rsma_rc}, {Scheme::rsma_rc, Scheme::rsma_sc}, {Scheme::rsma_sc, Scheme::sdma}};
    for (double p : powers)
    {
        detail << "[" << p << " dBm:";
        for (Scheme s : {Scheme::rsma_hc, Scheme::rsma_rc, Scheme::rsma_sc, Scheme::sdma})
        {
            std::vector<double> xs;
            for (const auto &r : fig1[{p, s}])
                xs.push_back(r.r_min);
            const auto m = mean_se(xs);
            detail << " " << to_string(s) << " " << fmt("%.3f", m.mean) << "+-" << fmt("%.3f", m.se);
        }
        for (const auto &[hi, lo] : chain)
        {
            const auto d = mean_se(differences(fig1[{p, hi}], fig1[{p, lo}]));
            if (d.mean < -d.se)
            {
                pass = false;
                detail << " (" << to_string(hi) << " below " << to_string(lo) << " by " << fmt("%.3f", -d.mean)
                       << ")";
            }
        }
        detail << "] ";
    }
    const auto gap = mean_se(differences(fig1[{43.0, Scheme::rsma_hc}], fig1[{43.0, Scheme::rsma_sc}]));
    pass = pass && gap.mean > gap.se;
    detail << "hc - sc at 43 dBm " << fmt("%.3f", gap.mean) << " (se " << fmt("%.3f", gap.se) << ")";
    report(8, pass, detail.str());
}

void monotone_convergence()
{
    int runs = 0, non_monotone = 0, capped = 0, max_iters = 0;
    double worst_drop = 0.0;
    for (const auto &[key, list] : fig1)
    {
        if (key.second != Scheme::rsma_hc)
            continue;
        for (const auto &r : list)
        {
            ++runs;
            non_monotone += r.monotone ? 0 : 1;
            capped += r.converged ? 0 : 1;
            max_iters = std::max(max_iters, r.iterations);
            worst_drop = std::max(worst_drop, r.worst_drop);
        }
    }
    int other_capped = 0, other_non_monotone = 0;
    for (const auto &[key, list] : fig1)
        if (key.second != Scheme::rsma_hc)
            for (const auto &r : list)
            {
                other_capped += r.converged ? 0 : 1;
                other_non_monotone += r.monotone ? 0 : 1;
            }
    report(3, runs >= 100 && non_monotone == 0 && capped == 0 && max_iters <= 200,
           std::to_string(runs) + " rsma-hc traces, " + std::to_string(non_monotone) + " non-monotone (largest drop " +
               fmt("%.1e", worst_drop) + "), " + std::to_string(capped) + " hit the cap, longest " +
               std::to_string(max_iters) + " iterations; other schemes: " + std::to_string(other_non_monotone) +
               " non-monotone, " + std::to_string(other_capped) + " capped");
}

void fig2_trend()
{
    const std::vector<double> ues = {4.0, 8.0, 12.0};
    ConfigPoint base;
    base.num_rrhs = 5;
    base.power_dbm = 43.0;
    auto table = sweep(ues, false, {Scheme::rsma_sc, Scheme::rsma_hc}, 30, base, "five RRHs, UE sweep");
    bool pass = true;
    std::ostringstream detail;
    for (double n : ues)
    {
        const auto d = mean_se(differences(table[{n, Scheme::rsma_hc}], table[{n, Scheme::rsma_sc}]));
        detail << "[N_U " << n << ": hc - sc " << fmt("%.3f", d.mean) << " (se " << fmt("%.3f", d.se) << ")] ";
        pass = pass && d.mean >= -d.se;
        if (n == 12.0)
            pass = pass && d.mean > 0.0;
    }
    report(9, pass, detail.str());
}

// ---------------------------------------------------------------------------

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void cli_determinism(const std::string &cli, const fs::path &work)
{
    fs::remove_all(work);
    fs::create_directories(work);
    {
        std::ofstream spec(work / "sweep.json");
        spec << R"({"num_rrhs": 3, "num_ues": 4, "sweep": {"axis": "power_dbm", "values": [23, 43]},)"
             << R"( "schemes": ["sdma", "rsma-sc", "rsma-rc", "rsma-hc"], "num_seeds": 2})";
    }
    const std::string q = "\"" + cli + "\"";
    auto path = [&](const std::string &name, int run) { return (work / (name + std::to_string(run))).string(); };
    int compared = 0, differing = 0, bad_exit = 0;
    std::string first_difference;
    for (int run = 0; run < 2; ++run)
    {
        auto p = [&](const std::string &n) { return path(n, run); };
        const std::string scenario = (work / "scenario.json").string();
        std::vector<std::string> commands = {
            q + " scenario generate --seed 3 --num-rrhs 3 --num-ues 4 --antennas 1 --out \"" + p("scenario") + "\"",
            q + " scenario generate --seed 3 --num-rrhs 3 --num-ues 4 --antennas 1 --out \"" + scenario + "\"",
            q + " cluster --scenario \"" + scenario + "\" > \"" + p("cluster") + "\"",
        };
        for (const char *scheme : {"sdma", "rsma-sc", "rsma-rc", "rsma-hc"})
            commands.push_back(q + " solve --scheme " + scheme + " --scenario \"" + scenario + "\" --out \"" +
                               p(std::string("solve_") + scheme) + "\"");
        commands.push_back(q + " sweep --quiet --spec \"" + (work / "sweep.json").string() + "\" --out-csv \"" +
                           p("sweep_csv") + "\" --out-summary \"" + p("sweep_summary") + "\"");
        for (const auto &c : commands)
            if (std::system(c.c_str()) != 0)
                ++bad_exit;
    }
    for (const char *name : {"scenario", "cluster", "solve_sdma", "solve_rsma-sc", "solve_rsma-rc", "solve_rsma-hc",
                             "sweep_csv", "sweep_summary"})
    {
        const auto a = slurp(path(name, 0)), b = slurp(path(name, 1));
        ++compared;
        if (a.empty() || a != b)
        {
            ++differing;
            if (first_difference.empty())
                first_difference = name;
        }
    }
    report(10, differing == 0 && bad_exit == 0,
           std::to_string(compared) + " outputs compared, " + std::to_string(differing) + " differ" +
               (first_difference.empty() ? "" : " (first: " + first_difference + ")") + ", " +
               std::to_string(bad_exit) + " non-zero exits");
}

} // namespace

int main(int argc, char **argv)
{
    if (argc != 3)
    {
        std::fprintf(stderr, "usage: %s <rsma binary> <scratch dir>\n", argv[0]);
        return 2;
    }
    surrogate_tightness();
    bound_direction();
    single_link_oracle();
    gradient_correctness();
    clustering_structure();
    cli_determinism(argv[1], argv[2]);
    fig1_trend();
    monotone_convergence();
    fig2_trend();
    report(4, feasibility.worst <= 1e-6,
           std::to_string(feasibility.checked) + " solutions re-evaluated, worst relative violation " +
               fmt("%.2e", feasibility.worst) + (feasibility.where.empty() ? "" : " at " + feasibility.where));
    for (const auto &[id, line] : lines)
        std::printf("%s\n", line.c_str());
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
