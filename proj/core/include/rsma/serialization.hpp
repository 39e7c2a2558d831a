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

// JSON representations of the domain types. Complex numbers are [re, im]
// pairs, matrices are arrays of rows. Doubles are written in shortest
// round-trip form, so a value read back compares equal bit for bit.

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "rsma/clustering.hpp"
#include "rsma/model.hpp"
#include "rsma/rates.hpp"
#include "rsma/scenario.hpp"
#include "rsma/subsolver.hpp"
#include "rsma/wmmse.hpp"

namespace rsma
{

using json = nlohmann::json;

json complex_to_json(cplx c);
cplx complex_from_json(const json &j);
json vector_to_json(const CVector &v);
CVector vector_from_json(const json &j);
json matrix_to_json(const CMatrix &m);
CMatrix matrix_from_json(const json &j);

void to_json(json &j, const SystemConfig &cfg);
void from_json(const json &j, SystemConfig &cfg);
void to_json(json &j, const ChannelState &chan);
void from_json(const json &j, ChannelState &chan);
/// Writes sets, membership and orders; reading rebuilds the structure from
/// the sets and rejects files whose membership/orders disagree.
void to_json(json &j, const CommonStructure &s);
void from_json(const json &j, CommonStructure &s);
void to_json(json &j, const RateAllocation &r);
void from_json(const json &j, RateAllocation &r);
void to_json(json &j, const DesignVariables &vars);
void from_json(const json &j, DesignVariables &vars);
void to_json(json &j, const WmmseAuxiliaries &aux);
void from_json(const json &j, WmmseAuxiliaries &aux);

void to_json(json &j, const ScenarioSpec &spec);
void from_json(const json &j, ScenarioSpec &spec);
void to_json(json &j, const Placement &p);
void from_json(const json &j, Placement &p);
void to_json(json &j, const Scenario &s);
void from_json(const json &j, Scenario &s);

void to_json(json &j, const RateReport &r);
void to_json(json &j, const Dendrogram &d);

/// Wall-clock entries are included only on request so that reruns stay
/// byte-identical.
json trace_to_json(const IterationTrace &trace, bool include_timing);

json read_json_file(const std::string &path);
/// Writes j.dump(2) plus a trailing newline.
void write_json_file(const std::string &path, const json &j);

} // namespace rsma
