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

#ifndef HYBRID_LINK_HPP
#define HYBRID_LINK_HPP

#include "hybrid/analog.hpp"
#include "hybrid/channel.hpp"
#include "hybrid/precoding.hpp"
#include "hybrid/system_config.hpp"

#include <vector>

namespace hybrid
{
    struct LinkResult
    {
        std::vector<double> sinr;         // linear
        std::vector<double> rate;         // log2(1 + sinr), bits/s/Hz
        double sum_rate = 0.0;
        double radiated_fraction = 0.0;   // (1/K) sum_k ||a_hat w_k||^2
        std::vector<double> signal_power;       // |g_k^H w_k|^2
        std::vector<double> interference_power; // sum_{j != k} |g_k^H w_j|^2
        bool degenerate = false;

        // Result for a trial whose precoder could not be built.
        static LinkResult degenerate_trial(std::size_t users);
    };

    // Per-user SINR with equal power split P/K and unit noise:
    //   SINR_k = (P/K)|g_k^H w_k|^2 / ((P/K) sum_{j != k} |g_k^H w_j|^2 + 1)
    // evaluated on the true effective channels g_k = a_hat^H h_k.
    LinkResult sinr_per_user(const ChannelMatrix &channel, const AnalogPrecoder &analog, const DigitalPrecoder &digital,
                             const SystemConfig &cfg);

    // Same computation from an already formed effective-channel matrix (G column k = g_k).
    LinkResult sinr_from_effective(const CMatrix &G, const CMatrix &W, double power);

    double radiated_power_fraction(const AnalogPrecoder &analog, const DigitalPrecoder &digital, const SystemConfig &cfg);
}

#endif
