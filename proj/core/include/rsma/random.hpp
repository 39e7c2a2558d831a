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

// Seedable random streams. Every draw category gets its own generator so a
// new category never perturbs the draws of an existing one.
//
// Stream rule: the engine for (seed, stream) is std::mt19937_64 seeded with
// std::seed_seq{lo32(seed), hi32(seed), stream_id}. Both algorithms are fixed
// by the C++ standard. Uniform and normal variates are derived here (53-bit
// mantissa, Box-Muller) rather than through <random> distributions, whose
// output is implementation-defined.

#pragma once

#include <cstdint>
#include <random>

#include "rsma/linalg.hpp"

namespace rsma
{

enum class Stream : std::uint32_t
{
    placement = 1,
    shadowing = 2,
    fading = 3,
    initialization = 4,
    set_design = 5,
};

class Rng
{
  public:
    Rng(std::uint64_t seed, Stream stream);

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1).
    double uniform();
    double normal();
    /// Circularly-symmetric CN(0, 1).
    cplx complex_normal();
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

  private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace rsma
