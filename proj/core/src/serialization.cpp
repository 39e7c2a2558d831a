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

#include "rsma/serialization.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rsma
{

json complex_to_json(cplx c) { return json::array({c.real(), c.imag()}); }

cplx complex_from_json(const json &j)
{
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("complex numbers must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json vector_to_json(const CVector &v)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(complex_to_json(v[i]));
    return out;
}

CVector vector_from_json(const json &j)
{
    if (!j.is_array())
        throw std::invalid_argument("complex vectors must be arrays");
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
    return v;
}

json matrix_to_json(const CMatrix &m)
{
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        out.push_back(vector_to_json(m.row(r).transpose()));
    return out;
}

CMatrix matrix_from_json(const json &j)
{
    if (!j.is_array())
        throw std::invalid_argument("complex matrices must be arrays of rows");
    if (j.empty())
        return CMatrix(0, 0);
    const auto cols = j[0].size();
    CMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < j.size(); ++r)
    {
        if (j[r].size() != cols)
            throw std::invalid_argument("complex matrix rows differ in length");
        m.row(static_cast<Eigen::Index>(r)) = vector_from_json(j[r]).transpose();
    }
    return m;
}

void to_json(json &j, const SystemConfig &cfg)
{
    j = json{{"num_rrhs", cfg.num_rrhs},
             {"num_ues", cfg.num_ues},
             {"antennas", cfg.antennas},
             {"fronthaul_capacity", cfg.fronthaul_capacity},
             {"power_limit", cfg.power_limit},
             {"noise_variance", cfg.noise_variance}};
}

void from_json(const json &j, SystemConfig &cfg)
{
    j.at("num_rrhs").get_to(cfg.num_rrhs);
    j.at("num_ues").get_to(cfg.num_ues);
    j.at("antennas").get_to(cfg.antennas);
    j.at("fronthaul_capacity").get_to(cfg.fronthaul_capacity);
    j.at("power_limit").get_to(cfg.power_limit);
    j.at("noise_variance").get_to(cfg.noise_variance);
}

void to_json(json &j, const ChannelState &chan) { j = json{{"h", matrix_to_json(chan.h)}}; }

void from_json(const json &j, ChannelState &chan) { chan.h = matrix_from_json(j.at("h")); }

void to_json(json &j, const CommonStructure &s)
{
    j = json{{"num_ues", s.num_ues}, {"sets", s.sets}, {"membership", s.membership}, {"orders", s.orders}};
}

void from_json(const json &j, CommonStructure &s)
{
    s = build_orders(j.at("sets").get<std::vector<UeSet>>(), j.at("num_ues").get<int>());
    if (j.contains("membership") && j.at("membership").get<std::vector<std::vector<int>>>() != s.membership)
        throw StructureError("structure: membership lists disagree with sets");
    if (j.contains("orders") && j.at("orders").get<std::vector<std::vector<int>>>() != s.orders)
        throw StructureError("structure: decoding orders disagree with the cardinality rule");
}

void to_json(json &j, const RateAllocation &r) { j = json{{"private", r.private_rates}, {"common", r.common}}; }

void from_json(const json &j, RateAllocation &r)
{
    j.at("private").get_to(r.private_rates);
    j.at("common").get_to(r.common);
}

void to_json(json &j, const DesignVariables &vars)
{
    json vp = json::array(), vc = json::array(), om = json::array();
    for (const auto &v : vars.v_private)
        vp.push_back(vector_to_json(v));
    for (const auto &v : vars.v_common)
        vc.push_back(vector_to_json(v));
    for (const auto &o : vars.omega)
        om.push_back(matrix_to_json(o));
    j = json{{"v_private", vp}, {"v_common", vc}, {"omega", om}, {"rates", vars.rates}};
}

void from_json(const json &j, DesignVariables &vars)
{
    vars.v_private.clear();
    vars.v_common.clear();
    vars.omega.clear();
    for (const auto &v : j.at("v_private"))
        vars.v_private.push_back(vector_from_json(v));
    for (const auto &v : j.at("v_common"))
        vars.v_common.push_back(vector_from_json(v));
    for (const auto &o : j.at("omega"))
        vars.omega.push_back(matrix_from_json(o));
    j.at("rates").get_to(vars.rates);
}

void to_json(json &j, const WmmseAuxiliaries &aux)
{
    json up = json::array(), uc = json::array(), sg = json::array();
    for (auto u : aux.u_private)
        up.push_back(complex_to_json(u));
    for (const auto &row : aux.u_common)
    {
        json r = json::array();
        for (auto u : row)
            r.push_back(complex_to_json(u));
        uc.push_back(r);
    }
    for (const auto &s : aux.sigma)
        sg.push_back(matrix_to_json(s));
    j = json{{"u_private", up}, {"u_common", uc}, {"w_private", aux.w_private}, {"w_common", aux.w_common},
             {"sigma", sg}};
}

void from_json(const json &j, WmmseAuxiliaries &aux)
{
    aux = {};
    for (const auto &u : j.at("u_private"))
        aux.u_private.push_back(complex_from_json(u));
    for (const auto &row : j.at("u_common"))
    {
        aux.u_common.emplace_back();
        for (const auto &u : row)
            aux.u_common.back().push_back(complex_from_json(u));
    }
    j.at("w_private").get_to(aux.w_private);
    j.at("w_common").get_to(aux.w_common);
    for (const auto &s : j.at("sigma"))
        aux.sigma.push_back(matrix_from_json(s));
}

void to_json(json &j, const ScenarioSpec &spec)
{
    j = json{{"radius_m", spec.radius_m},
             {"pathloss_a_db", spec.pathloss_a_db},
             {"pathloss_b", spec.pathloss_b},
             {"shadowing_std_db", spec.shadowing_std_db},
             {"bandwidth_hz", spec.bandwidth_hz},
             {"noise_psd_dbm_hz", spec.noise_psd_dbm_hz},
             {"min_distance_m", spec.min_distance_m},
             {"seed", spec.seed},
             {"rayleigh_fading", spec.rayleigh_fading}};
}

void from_json(const json &j, ScenarioSpec &spec)
{
    // every field is optional and falls back to the documented default
    spec = ScenarioSpec{};
    spec.radius_m = j.value("radius_m", spec.radius_m);
    spec.pathloss_a_db = j.value("pathloss_a_db", spec.pathloss_a_db);
    spec.pathloss_b = j.value("pathloss_b", spec.pathloss_b);
    spec.shadowing_std_db = j.value("shadowing_std_db", spec.shadowing_std_db);
    spec.bandwidth_hz = j.value("bandwidth_hz", spec.bandwidth_hz);
    spec.noise_psd_dbm_hz = j.value("noise_psd_dbm_hz", spec.noise_psd_dbm_hz);
    spec.min_distance_m = j.value("min_distance_m", spec.min_distance_m);
    spec.seed = j.value("seed", spec.seed);
    spec.rayleigh_fading = j.value("rayleigh_fading", spec.rayleigh_fading);
}

void to_json(json &j, const Placement &p)
{
    auto points = [](const std::vector<Point> &pts) {
        json out = json::array();
        for (const auto &pt : pts)
            out.push_back(json::array({pt.x, pt.y}));
        return out;
    };
    j = json{{"rrh_xy", points(p.rrh_xy)}, {"ue_xy", points(p.ue_xy)}};
}

void from_json(const json &j, Placement &p)
{
    auto points = [](const json &arr) {
        std::vector<Point> out;
        for (const auto &pt : arr)
            out.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
        return out;
    };
    p.rrh_xy = points(j.at("rrh_xy"));
    p.ue_xy = points(j.at("ue_xy"));
}

void to_json(json &j, const Scenario &s)
{
    j = json{{"spec", s.spec}, {"config", s.config}, {"placement", s.placement}, {"channel", s.channel}};
}

void from_json(const json &j, Scenario &s)
{
    j.at("spec").get_to(s.spec);
    j.at("config").get_to(s.config);
    j.at("placement").get_to(s.placement);
    j.at("channel").get_to(s.channel);
    validate_config(s.config);
    validate_channel(s.channel, s.config);
}

void to_json(json &j, const RateReport &r)
{
    json viol = json::array();
    for (const auto &v : r.violations)
        viol.push_back(json{{"kind", to_string(v.kind)}, {"index", v.index}, {"ue", v.ue}, {"lhs", v.lhs}, {"rhs", v.rhs}});
    j = json{{"f_private", r.f_private},   {"f_common", r.f_common}, {"g_fronthaul", r.g_fronthaul},
             {"p_power", r.p_power},       {"per_ue_rate", r.per_ue_rate}, {"r_min", r.r_min},
             {"violations", viol}};
}

void to_json(json &j, const Dendrogram &d)
{
    json merges = json::array();
    for (const auto &m : d.merges)
        merges.push_back(json{{"left", m.left}, {"right", m.right}, {"merged", m.merged}, {"distance", m.distance}});
    j = json{{"num_ues", d.num_ues}, {"merges", merges}};
}

json trace_to_json(const IterationTrace &trace, bool include_timing)
{
    json status = json::array();
    for (auto s : trace.status)
        status.push_back(to_string(s));
    json j{{"r_min", trace.r_min},
           {"status", status},
           {"newton_iterations", trace.newton_iterations},
           {"iterations", trace.iterations()},
           {"converged", trace.converged}};
    if (include_timing)
        j["wall_s"] = trace.wall_s;
    return j;
}

json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    try
    {
        return json::parse(in);
    }
    catch (const json::parse_error &e)
    {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void write_json_file(const std::string &path, const json &j)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

} // namespace rsma
