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

#include "hybrid/channel.hpp"
#include "hybrid/errors.hpp"

#include <cmath>
#include <numbers>

namespace hybrid
{
    ChannelMatrix rayleigh_channel(const SystemConfig &cfg, Rng &rng)
    {
        cfg.validate();
        CMatrix H(cfg.antennas, cfg.users);
        for (std::size_t k = 0; k < cfg.users; ++k)
            for (std::size_t m = 0; m < cfg.antennas; ++m)
                H(m, k) = rng.complex_normal();
        return {std::move(H), RayleighModel{}};
    }

    CVector ula_response(std::size_t antennas, double phi, double d_over_lambda)
    {
        CVector a(antennas);
        const double step = 2.0 * std::numbers::pi * d_over_lambda * std::sin(phi);
        const double amp = 1.0 / std::sqrt(static_cast<double>(antennas));
        for (std::size_t m = 0; m < antennas; ++m)
            a[m] = std::polar(amp, static_cast<double>(m) * step);
        return a;
    }

    ChannelMatrix mmwave_channel(const SystemConfig &cfg, std::size_t paths, double d_over_lambda, Rng &rng)
    {
        cfg.validate();
        if (paths < 1)
            throw InvalidPathCount("mmwave_channel: path count L must be >= 1");
        if (!(d_over_lambda > 0.0) || !std::isfinite(d_over_lambda))
            throw ConfigError("d_over_lambda: must be positive");

        const std::size_t M = cfg.antennas;
        const double gain = std::sqrt(static_cast<double>(M) / static_cast<double>(paths));
        CMatrix H(M, cfg.users);
        for (std::size_t k = 0; k < cfg.users; ++k)
            for (std::size_t l = 0; l < paths; ++l)
            {
                const cdouble alpha = rng.complex_normal();
                const double phi = 2.0 * std::numbers::pi * rng.uniform();
                const CVector a = ula_response(M, phi, d_over_lambda);
                for (std::size_t m = 0; m < M; ++m)
                    H(m, k) += gain * alpha * a[m];
            }
        return {std::move(H), MmWaveModel{paths, d_over_lambda}};
    }

    ChannelMatrix generate_channel(const SystemConfig &cfg, const ChannelModel &model, Rng &rng)
    {
        if (const auto *mm = std::get_if<MmWaveModel>(&model))
            return mmwave_channel(cfg, mm->paths, mm->d_over_lambda, rng);
        return rayleigh_channel(cfg, rng);
    }
}
