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
#include "hybrid/rng.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace hybrid;
using Catch::Matchers::WithinAbs;

TEST_CASE("streams are reproducible and distinct")
{
    Rng a(42, 3), b(42, 3), c(42, 4), d(43, 3);
    for (int i = 0; i < 100; ++i)
    {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        CHECK(x != c.next_u64());
        CHECK(x != d.next_u64());
    }
    const Rng parent(7, 1);
    Rng e = parent.derive(5), f = parent.derive(5), g = parent.derive(6);
    CHECK(e.next_u64() == f.next_u64());
    CHECK(e.next_u64() != g.next_u64());
}

TEST_CASE("uniform draws stay in range")
{
    Rng rng(1, 0);
    for (int i = 0; i < 100000; ++i)
    {
        const double u = rng.uniform();
        CHECK((u >= 0.0 && u < 1.0));
        const double v = rng.uniform_open();
        CHECK((v > 0.0 && v <= 1.0));
    }
}

TEST_CASE("complex normal moments")
{
    Rng rng(2, 0);
    const int n = 200000;
    double re = 0, im = 0, pw = 0, cross = 0, fourth = 0;
    for (int i = 0; i < n; ++i)
    {
        const cdouble z = rng.complex_normal();
        re += z.real();
        im += z.imag();
        pw += std::norm(z);
        cross += z.real() * z.imag();
        fourth += std::norm(z) * std::norm(z);
    }
    // |z|^2 ~ Exp(1): mean 1, second moment 2
    CHECK_THAT(re / n, WithinAbs(0.0, 0.01));
    CHECK_THAT(im / n, WithinAbs(0.0, 0.01));
    CHECK_THAT(pw / n, WithinAbs(1.0, 0.01));
    CHECK_THAT(cross / n, WithinAbs(0.0, 0.01));
    CHECK_THAT(fourth / n, WithinAbs(2.0, 0.05));

    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i)
    {
        const double x = rng.normal();
        s += x;
        s2 += x * x;
    }
    CHECK_THAT(s / n, WithinAbs(0.0, 0.01));
    CHECK_THAT(s2 / n, WithinAbs(1.0, 0.015));
}

TEST_CASE("Rayleigh channel shape, statistics and draw order")
{
    SystemConfig cfg;
    cfg.antennas = 32;
    cfg.users = 4;
    Rng rng(3, 0);
    const ChannelMatrix ch = rayleigh_channel(cfg, rng);
    REQUIRE(ch.H.rows() == 32);
    REQUIRE(ch.H.cols() == 4);

    // user-major: first M draws fill column 0
    Rng replay(3, 0);
    for (std::size_t m = 0; m < 32; ++m)
        CHECK(ch.H(m, 0) == replay.complex_normal());
    CHECK(ch.H(0, 1) == replay.complex_normal());

    double pw = 0;
    Rng big(4, 0);
    cfg.antennas = 256;
    for (int t = 0; t < 200; ++t)
    {
        const ChannelMatrix h = rayleigh_channel(cfg, big);
        pw += h.H.frobenius_norm() * h.H.frobenius_norm();
    }
    CHECK_THAT(pw / (200.0 * 256 * 4), WithinAbs(1.0, 0.01));
}

TEST_CASE("ULA response is unit norm with a linear phase")
{
    const CVector a = ula_response(16, 0.3, 0.5);
    CHECK_THAT(norm(a), WithinAbs(1.0, 1e-14));
    const double step = 2.0 * std::numbers::pi * 0.5 * std::sin(0.3);
    for (std::size_t m = 1; m < 16; ++m)
    {
        const cdouble ratio = a[m] / a[m - 1];
        CHECK_THAT(std::arg(ratio), WithinAbs(std::remainder(step, 2 * std::numbers::pi), 1e-12));
    }
    // broadside: all entries equal
    const CVector b = ula_response(8, 0.0, 0.5);
    for (const cdouble &x : b)
        CHECK_THAT(std::abs(x - b[0]), WithinAbs(0.0, 1e-15));
}

TEST_CASE("mmWave channel has unit average entry power")
{
    SystemConfig cfg;
    cfg.antennas = 64;
    cfg.users = 4;
    Rng rng(5, 0);
    double pw = 0;
    const int trials = 400;
    for (int t = 0; t < trials; ++t)
    {
        const ChannelMatrix h = mmwave_channel(cfg, 10, 0.5, rng);
        pw += h.H.frobenius_norm() * h.H.frobenius_norm();
    }
    CHECK_THAT(pw / (trials * 64.0 * 4), WithinAbs(1.0, 0.05));

    // one path: h_k = sqrt(M) alpha a(phi), so all |entries| are equal
    const ChannelMatrix one = mmwave_channel(cfg, 1, 0.5, rng);
    for (std::size_t m = 1; m < 64; ++m)
        CHECK_THAT(std::abs(one.H(m, 2)), WithinAbs(std::abs(one.H(0, 2)), 1e-12));

    CHECK_THROWS_AS(mmwave_channel(cfg, 0, 0.5, rng), InvalidPathCount);
}

TEST_CASE("generate_channel dispatches on the model")
{
    SystemConfig cfg;
    cfg.antennas = 16;
    cfg.users = 2;
    Rng a(6, 0), b(6, 0);
    const ChannelMatrix x = generate_channel(cfg, RayleighModel{}, a);
    const ChannelMatrix y = rayleigh_channel(cfg, b);
    CHECK((x.H - y.H).max_abs() == 0.0);
    Rng c(6, 0), d(6, 0);
    const ChannelMatrix u = generate_channel(cfg, MmWaveModel{3, 0.5}, c);
    const ChannelMatrix v = mmwave_channel(cfg, 3, 0.5, d);
    CHECK((u.H - v.H).max_abs() == 0.0);
}
