// SPDX-License-Identifier: Apache-2.0
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

#ifndef HYBRID_RNG_HPP
#define HYBRID_RNG_HPP

#include "hybrid/linalg.hpp"

#include <cstdint>
#include <random>

namespace hybrid
{
    // Reproducible random stream addressed by (master_seed, stream_id).
    //
    // The engine state is derived by hashing the pair with SplitMix64, so any stream can be
    // regenerated independently of every other stream. Monte-Carlo trials use stream_id =
    // trial index and derive sub-streams per purpose (channel, per-user codebook) with derive().
    //
    // Sampling algorithms are fixed here rather than taken from <random> distributions, whose
    // output is implementation-defined:
    //   uniform()         53-bit mantissa draw in [0, 1)
    //   normal()          Box-Muller, N(0, 1), one uniform pair per draw (no caching)
    //   complex_normal()  CN(0, 1): Box-Muller with r = sqrt(-ln u1), phase 2*pi*u2, so each of the
    //                     real and imaginary parts is N(0, 1/2)
    class Rng
    {
    public:
        Rng(std::uint64_t master_seed, std::uint64_t stream_id);

        std::uint64_t master_seed() const { return master_seed_; }
        std::uint64_t stream_id() const { return stream_id_; }

        // Independent child stream; same (parent, tag) always yields the same child.
        Rng derive(std::uint64_t tag) const;

        std::uint64_t next_u64() { return engine_(); }
        double uniform();
        double uniform_open(); // (0, 1]
        double normal();
        cdouble complex_normal();

    private:
        std::uint64_t master_seed_;
        std::uint64_t stream_id_;
        std::mt19937_64 engine_;
    };

    std::uint64_t splitmix64(std::uint64_t x);
}

#endif
