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
#include "hybrid/feedback.hpp"
#include "hybrid/link.hpp"
#include "hybrid/precoding.hpp"
#include "hybrid/rng.hpp"
#include "hybrid/runner.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace hybrid;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    SystemConfig config(Structure s, std::size_t M, std::size_t K, AnalogBits b1, double power = 100.0)
    {
        SystemConfig c;
        c.structure = s;
        c.antennas = M;
        c.users = K;
        c.analog_bits = b1;
        c.power = power;
        return c;
    }

    struct Setup
    {
        ChannelMatrix ch;
        AnalogPrecoder analog;
        CMatrix G;
    };

    Setup setup(const SystemConfig &cfg, std::uint64_t seed)
    {
        Rng rng(seed, 0);
        ChannelMatrix ch = rayleigh_channel(cfg, rng);
        AnalogPrecoder a = analog_precoder(ch, cfg);
        CMatrix G = effective_channels(ch, a).G;
        return {std::move(ch), std::move(a), std::move(G)};
    }
}

TEST_CASE("ZF with true effective channels nulls interference")
{
    for (const Structure st : {Structure::Sub, Structure::Full})
        for (std::uint64_t seed = 0; seed < 20; ++seed)
        {
            const SystemConfig cfg = config(st, 64, 4, 3);
            const Setup s = setup(cfg, 100 + seed);
            const DigitalPrecoder d = zf_precoder(s.G, s.analog.f_hat);
            for (std::size_t k = 0; k < 4; ++k)
                CHECK_THAT(norm(s.analog.f_hat * d.W.col(k)), WithinAbs(1.0, 1e-12));
            const LinkResult r = sinr_per_user(s.ch, s.analog, d, cfg);
            for (std::size_t k = 0; k < 4; ++k)
                CHECK(r.interference_power[k] < 1e-20 * r.signal_power[k]);
        }
}

TEST_CASE("SINR follows the equal-power formula")
{
    const CMatrix G(2, 2, {{1, 0}, {0.5, 0}, {0, 1}, {2, 0}});
    const CMatrix W(2, 2, {{1, 0}, {0, 0}, {0, 0}, {1, 0}});
    // g_0 = [1, i], g_1 = [0.5, 2]; g_k^H w_j = conj(G(j, k))
    const LinkResult r = sinr_from_effective(G, W, 4.0);
    // user 0: signal |1|^2, interference |conj(i)|^2 = 1; P/K = 2
    CHECK_THAT(r.sinr[0], WithinAbs(2.0 * 1.0 / (2.0 * 1.0 + 1.0), 1e-15));
    // user 1: signal 4, interference 0.25
    CHECK_THAT(r.sinr[1], WithinAbs(2.0 * 4.0 / (2.0 * 0.25 + 1.0), 1e-15));
    CHECK_THAT(r.sum_rate, WithinAbs(std::log2(1 + r.sinr[0]) + std::log2(1 + r.sinr[1]), 1e-15));
    CHECK_THROWS_AS(sinr_from_effective(G, CMatrix(3, 2), 1.0), DimensionMismatch);
}

TEST_CASE("MRT equals ZF for a single user")
{
    const SystemConfig cfg = config(Structure::Sub, 16, 1, 4);
    const Setup s = setup(cfg, 7);
    const DigitalPrecoder z = zf_precoder(s.G, s.analog.f_hat);
    const DigitalPrecoder m = mrt_precoder(s.G, s.analog.f_hat);
    CHECK(std::abs(z.W(0, 0) - m.W(0, 0)) < 1e-12);
}

TEST_CASE("MRT aligns each column with its fed-back channel")
{
    const SystemConfig cfg = config(Structure::Full, 32, 4, 3);
    const Setup s = setup(cfg, 8);
    const DigitalPrecoder m = mrt_precoder(s.G, s.analog.f_hat);
    for (std::size_t k = 0; k < 4; ++k)
    {
        const CVector w = m.W.col(k), g = s.G.col(k);
        CHECK_THAT(std::abs(dot(g, w)), WithinRel(norm(g) * norm(w), 1e-12));
        CHECK_THAT(norm(s.analog.f_hat * w), WithinAbs(1.0, 1e-12));
    }
    CMatrix Z = s.G;
    for (std::size_t i = 0; i < 4; ++i)
        Z(i, 2) = 0;
    CHECK_THROWS_AS(mrt_precoder(Z, s.analog.f_hat), ZeroVector);
}

TEST_CASE("ZF rejects a rank-deficient feedback matrix")
{
    const SystemConfig cfg = config(Structure::Sub, 16, 2, 3);
    const Setup s = setup(cfg, 9);
    CMatrix G = s.G;
    G.set_col(1, G.col(0));
    CHECK_THROWS_AS(zf_precoder(G, s.analog.f_hat), SingularMatrix);
}

TEST_CASE("radiated fraction reflects divider and combiner dissipation")
{
    // ||f_hat w_k|| = 1, so the fraction equals dissipation_scale^2: 1/N (sub) and 1/(M K) (full)
    const std::size_t M = 64, K = 4;
    const SystemConfig sub = config(Structure::Sub, M, K, 3), full = config(Structure::Full, M, K, 3);
    const Setup a = setup(sub, 10), b = setup(full, 10);
    const double fs = radiated_power_fraction(a.analog, zf_precoder(a.G, a.analog.f_hat), sub);
    const double ff = radiated_power_fraction(b.analog, zf_precoder(b.G, b.analog.f_hat), full);
    CHECK_THAT(fs, WithinRel(1.0 / 16.0, 1e-12));
    CHECK_THAT(ff, WithinRel(1.0 / 256.0, 1e-12));
    CHECK_THAT(fs / ff, WithinRel(static_cast<double>(K * K), 1e-12));
}

TEST_CASE("degenerate trial placeholder")
{
    const LinkResult r = LinkResult::degenerate_trial(3);
    CHECK(r.degenerate);
    CHECK(r.sinr.size() == 3);
    CHECK(std::isnan(r.sum_rate));
}

TEST_CASE("fully-digital baseline")
{
    Rng rng(11, 0);
    CMatrix h(8, 1);
    for (std::size_t m = 0; m < 8; ++m)
        h(m, 0) = rng.complex_normal();
    const LinkResult one = fully_digital_baseline(h, 5.0, 1);
    const double n2 = norm(h.col(0)) * norm(h.col(0));
    CHECK_THAT(one.rate[0], WithinAbs(std::log2(1.0 + 5.0 * n2), 1e-12));

    SystemConfig cfg = config(Structure::Full, 32, 4, std::nullopt);
    const ChannelMatrix ch = rayleigh_channel(cfg, rng);
    const LinkResult r = fully_digital_baseline(ch.H, 100.0, 4);
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(r.interference_power[k] < 1e-20 * r.signal_power[k]);
    CHECK_THROWS_AS(fully_digital_baseline(CMatrix(2, 4), 1.0, 4), DimensionMismatch);
}
