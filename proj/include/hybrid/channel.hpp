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

#ifndef HYBRID_CHANNEL_HPP
#define HYBRID_CHANNEL_HPP

#include "hybrid/linalg.hpp"
#include "hybrid/rng.hpp"
#include "hybrid/system_config.hpp"

#include <cstddef>
#include <variant>

namespace hybrid
{
    struct RayleighModel
    {
    };

    // Geometric narrowband model with a ULA at the base station.
    struct MmWaveModel
    {
        std::size_t paths = 10;
        double d_over_lambda = 0.5;
    };

    using ChannelModel = std::variant<RayleighModel, MmWaveModel>;

    // H is M x K; column k is the channel h_k of user k.
    struct ChannelMatrix
    {
        CMatrix H;
        ChannelModel model;
    };

    // i.i.d. CN(0, 1) entries. Draw order: user-major (all M entries of h_1, then h_2, ...).
    ChannelMatrix rayleigh_channel(const SystemConfig &cfg, Rng &rng);

    // ULA response a(phi) = (1/sqrt(M)) [1, e^{j 2 pi (d/lambda) sin phi}, ..., e^{j (M-1) 2 pi (d/lambda) sin phi}].
    CVector ula_response(std::size_t antennas, double phi, double d_over_lambda);

    // h_k = sqrt(M/L) sum_l alpha_l a(phi_l), alpha_l ~ CN(0, 1), phi_l ~ U[0, 2 pi).
    // Per user the draws are (alpha_1, phi_1, ..., alpha_L, phi_L). No per-realization renormalization.
    ChannelMatrix mmwave_channel(const SystemConfig &cfg, std::size_t paths, double d_over_lambda, Rng &rng);

    ChannelMatrix generate_channel(const SystemConfig &cfg, const ChannelModel &model, Rng &rng);
}

#endif
