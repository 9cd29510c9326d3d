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

#include "hybrid/analog.hpp"
#include "hybrid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hybrid
{
    namespace
    {
        constexpr double kTwoPi = 2.0 * std::numbers::pi;

        double wrap_angle(double theta)
        {
            double t = std::fmod(theta, kTwoPi);
            if (t < 0.0)
                t += kTwoPi;
            return t >= kTwoPi ? 0.0 : t;
        }

        double entry_phase(cdouble h)
        {
            if (h == cdouble(0.0, 0.0))
                return 0.0;
            return wrap_angle(std::arg(h));
        }
    }

    std::size_t quantize_phase_index(double theta, int bits)
    {
        if (bits < 1 || bits > 30)
            throw std::invalid_argument("quantize_phase: bits must be in [1, 30]");
        const std::size_t levels = std::size_t{1} << bits;
        const double x = wrap_angle(theta) / (kTwoPi / static_cast<double>(levels));
        const double lo = std::floor(x);
        const double frac = x - lo;
        const std::size_t n_lo = static_cast<std::size_t>(lo) % levels;
        const std::size_t n_hi = (n_lo + 1) % levels;
        if (frac < 0.5)
            return n_lo;
        if (frac > 0.5)
            return n_hi;
        return std::min(n_lo, n_hi);
    }

    double quantize_phase(double theta, int bits)
    {
        const std::size_t levels = std::size_t{1} << bits;
        return kTwoPi * static_cast<double>(quantize_phase_index(theta, bits)) / static_cast<double>(levels);
    }

    AnalogPrecoder analog_precoder(const ChannelMatrix &channel, const SystemConfig &cfg)
    {
        cfg.validate();
        const CMatrix &H = channel.H;
        const std::size_t M = cfg.antennas, K = cfg.users;
        if (H.rows() != M || H.cols() != K)
            throw DimensionMismatch("analog_precoder: channel is " + std::to_string(H.rows()) + "x" +
                                    std::to_string(H.cols()) + ", config expects " + std::to_string(M) + "x" +
                                    std::to_string(K));

        auto phase_of = [&](std::size_t j, std::size_t k)
        {
            const double raw = entry_phase(H(j, k));
            return cfg.analog_bits ? quantize_phase(raw, *cfg.analog_bits) : raw;
        };

        AnalogPrecoder out;
        out.structure = cfg.structure;
        out.analog_bits = cfg.analog_bits;
        out.f_hat = CMatrix(M, K);
        out.a_hat = CMatrix(M, K);

        const std::size_t N = cfg.antennas_per_chain();
        const double f_amp = 1.0 / std::sqrt(static_cast<double>(N));
        if (cfg.structure == Structure::Sub)
        {
            out.dissipation_scale = 1.0 / std::sqrt(static_cast<double>(N));
            for (std::size_t k = 0; k < K; ++k)
                for (std::size_t j = k * N; j < (k + 1) * N; ++j)
                    out.f_hat(j, k) = std::polar(f_amp, phase_of(j, k));
        }
        else
        {
            out.dissipation_scale = 1.0 / std::sqrt(static_cast<double>(M * K));
            for (std::size_t j = 0; j < M; ++j)
                for (std::size_t k = 0; k < K; ++k)
                    out.f_hat(j, k) = std::polar(f_amp, phase_of(j, k));
        }
        out.a_hat = out.f_hat * cdouble(out.dissipation_scale, 0.0);
        return out;
    }
}
