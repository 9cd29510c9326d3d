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

#include "hybrid/link.hpp"
#include "hybrid/errors.hpp"
#include "hybrid/feedback.hpp"

#include <cmath>
#include <limits>

namespace hybrid
{
    LinkResult LinkResult::degenerate_trial(std::size_t users)
    {
        LinkResult r;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        r.sinr.assign(users, nan);
        r.rate.assign(users, nan);
        r.signal_power.assign(users, nan);
        r.interference_power.assign(users, nan);
        r.sum_rate = nan;
        r.radiated_fraction = nan;
        r.degenerate = true;
        return r;
    }

    LinkResult sinr_from_effective(const CMatrix &G, const CMatrix &W, double power)
    {
        const std::size_t K = G.cols();
        if (G.rows() != W.rows() || W.cols() != K)
            throw DimensionMismatch("sinr: effective channels and precoder shapes differ");

        // S(k, j) = g_k^H w_j
        const CMatrix S = G.adjoint() * W;
        const double per_user = power / static_cast<double>(K);

        LinkResult r;
        r.sinr.resize(K);
        r.rate.resize(K);
        r.signal_power.resize(K);
        r.interference_power.resize(K);
        for (std::size_t k = 0; k < K; ++k)
        {
            double interference = 0.0;
            for (std::size_t j = 0; j < W.cols(); ++j)
                if (j != k)
                    interference += std::norm(S(k, j));
            const double signal = std::norm(S(k, k));
            r.signal_power[k] = signal;
            r.interference_power[k] = interference;
            r.sinr[k] = per_user * signal / (per_user * interference + 1.0);
            r.rate[k] = std::log2(1.0 + r.sinr[k]);
            r.sum_rate += r.rate[k];
        }
        return r;
    }

    LinkResult sinr_per_user(const ChannelMatrix &channel, const AnalogPrecoder &analog, const DigitalPrecoder &digital,
                             const SystemConfig &cfg)
    {
        if (channel.H.rows() != cfg.antennas || channel.H.cols() != cfg.users || digital.W.rows() != cfg.users ||
            digital.W.cols() != cfg.users)
            throw DimensionMismatch("sinr_per_user: dimensions disagree with the system configuration");
        const EffectiveChannelSet eff = effective_channels(channel, analog);
        LinkResult r = sinr_from_effective(eff.G, digital.W, cfg.power);
        r.radiated_fraction = radiated_power_fraction(analog, digital, cfg);
        return r;
    }

    double radiated_power_fraction(const AnalogPrecoder &analog, const DigitalPrecoder &digital, const SystemConfig &cfg)
    {
        if (analog.a_hat.cols() != digital.W.rows())
            throw DimensionMismatch("radiated_power_fraction: analog and digital shapes differ");
        const CMatrix AW = analog.a_hat * digital.W;
        double total = 0.0;
        for (std::size_t k = 0; k < AW.cols(); ++k)
        {
            double col = 0.0;
            for (std::size_t m = 0; m < AW.rows(); ++m)
                col += std::norm(AW(m, k));
            total += col;
        }
        return total / static_cast<double>(cfg.users);
    }
}
