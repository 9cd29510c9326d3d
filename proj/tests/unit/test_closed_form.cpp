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

#include "hybrid/closed_form.hpp"
#include "hybrid/errors.hpp"
#include "hybrid/rng.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <numbers>

using namespace hybrid;
using namespace hybrid::closed_form;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    constexpr double kPi = std::numbers::pi;
    const double kP25 = std::pow(10.0, 2.5);

    double bisect(const std::function<double(double)> &f, double lo, double hi)
    {
        double flo = f(lo);
        for (int i = 0; i < 200; ++i)
        {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if ((fm < 0) == (flo < 0))
            {
                lo = mid;
                flo = fm;
            }
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    // Sum rate with K relaxed to a real number, written out independently of the library.
    double sum_rate_real_k(Structure s, double P, double K, int b1)
    {
        const double d = kPi / std::exp2(b1);
        const double sinc2 = std::pow(std::sin(d) / d, 2);
        const double kpow = s == Structure::Sub ? K : K * K;
        return K * std::log2(1.0 + kPi * P * sinc2 / (4.0 * kpow));
    }
}

TEST_CASE("sinc and phase step")
{
    CHECK(sinc(0.0) == 1.0);
    CHECK_THAT(sinc(kPi / 2), WithinAbs(2.0 / kPi, 1e-15));
    CHECK_THAT(sinc(1e-9), WithinAbs(1.0, 1e-15));
    CHECK_THAT(phase_step(3), WithinAbs(kPi / 8, 1e-15));
    CHECK(phase_step(std::nullopt) == 0.0);
    CHECK_THROWS_AS(phase_step(0), ConfigError);
}

TEST_CASE("rho values")
{
    CHECK_THAT(rho(Structure::Sub, 4, 3), WithinAbs(0.86363, 1e-5));
    CHECK_THAT(rho(Structure::Full, 4, 3), WithinAbs(0.86363 / 2, 1e-5));
    CHECK_THAT(rho(Structure::Sub, 4, std::nullopt), WithinAbs(std::sqrt(kPi) / 2, 1e-15));
}

TEST_CASE("moments match a Monte-Carlo model of one compensated entry")
{
    // |h| e^{j eps}, |h| Rayleigh with E|h|^2 = 1, eps uniform on [-delta, delta]
    for (const int b1 : {1, 2, 3, 5})
    {
        const AsymptoticMoments m = moments(Structure::Sub, 4, b1);
        Rng rng(41, static_cast<std::uint64_t>(b1));
        const int n = 400000;
        double sr = 0, sr2 = 0, si = 0, si2 = 0;
        for (int i = 0; i < n; ++i)
        {
            const double r = std::abs(rng.complex_normal());
            const double e = (2 * rng.uniform() - 1) * m.delta;
            const double x = r * std::cos(e), y = r * std::sin(e);
            sr += x;
            sr2 += x * x;
            si += y;
            si2 += y * y;
        }
        CHECK_THAT(sr / n, WithinAbs(m.rho, 0.005));
        CHECK_THAT(sr2 / n - (sr / n) * (sr / n), WithinAbs(m.omega1, 0.005));
        CHECK_THAT(si2 / n - (si / n) * (si / n), WithinAbs(m.omega2, 0.005));
    }
}

TEST_CASE("golden per-user rate and loss at M=64, P=25 dB, B1=3, K=4")
{
    CHECK_THAT(asymptotic_rate(Structure::Sub, kP25, 4, 3), WithinAbs(5.91, 0.01));
    CHECK_THAT(asymptotic_rate(Structure::Full, kP25, 4, 3), WithinAbs(3.98, 0.01));
    CHECK_THAT(loss_bound(Structure::Sub, CodebookKind::CorrBased, kP25, 64, 4, 3, 5), WithinAbs(2.50, 0.01));
    CHECK_THAT(loss_bound(Structure::Sub, CodebookKind::CorrBased, kP25, 64, 4, 3, 10), WithinAbs(1.30, 0.01));
    CHECK_THAT(loss_bound(Structure::Full, CodebookKind::CorrBased, kP25, 64, 4, 3, 5), WithinAbs(0.37, 0.01));
    CHECK_THAT(loss_bound(Structure::Full, CodebookKind::CorrBased, kP25, 64, 4, 3, 10), WithinAbs(0.13, 0.01));

    // full-precision values of the same ratios
    const double rs = asymptotic_rate(Structure::Sub, kP25, 4, 3), rf = asymptotic_rate(Structure::Full, kP25, 4, 3);
    CHECK_THAT(loss_bound(Structure::Sub, CodebookKind::CorrBased, kP25, 64, 4, 3, 5) / rs, WithinAbs(0.42382, 1e-4));
    CHECK_THAT(loss_bound(Structure::Sub, CodebookKind::CorrBased, kP25, 64, 4, 3, 10) / rs, WithinAbs(0.22094, 1e-4));
    CHECK_THAT(loss_bound(Structure::Full, CodebookKind::CorrBased, kP25, 64, 4, 3, 5) / rf, WithinAbs(0.093, 0.002));
    CHECK_THAT(loss_bound(Structure::Full, CodebookKind::CorrBased, kP25, 64, 4, 3, 10) / rf, WithinAbs(0.033, 0.002));
}

TEST_CASE("loss bound behaviour")
{
    double prev = 1e9;
    for (double b2 = 1; b2 <= 20; b2 += 1)
    {
        const double l = loss_bound(Structure::Sub, CodebookKind::Rvq, 100.0, 64, 4, 3, b2);
        CHECK(l < prev);
        CHECK(l > 0);
        prev = l;
    }
    CHECK_THAT(net_rate(Structure::Full, CodebookKind::Rvq, 100, 64, 4, 3, 8),
               WithinAbs(asymptotic_rate(Structure::Full, 100, 4, 3) -
                             loss_bound(Structure::Full, CodebookKind::Rvq, 100, 64, 4, 3, 8),
                         1e-15));
    CHECK_THROWS_AS(loss_bound(Structure::Sub, CodebookKind::Rvq, 100.0, 64, 1, 3, 5), UnsupportedK);
}

TEST_CASE("sum-rate derivatives match finite differences")
{
    for (const Structure s : {Structure::Sub, Structure::Full})
        for (const double P : {1.0, 10.0, 316.0, 3000.0})
            for (const double K : {1.5, 2.0, 4.0, 7.3, 12.0})
            {
                const SumRateTrend t = sumrate_trend(s, P, K, 3);
                const double h = 1e-4;
                const auto f = [&](double k) { return sum_rate_real_k(s, P, k, 3); };
                const double d1 = (f(K + h) - f(K - h)) / (2 * h);
                const double d2 = (f(K + h) - 2 * f(K) + f(K - h)) / (h * h);
                CHECK_THAT(t.first_derivative, WithinAbs(d1, 1e-6 * std::max(1.0, std::abs(d1))));
                CHECK_THAT(t.second_derivative, WithinAbs(d2, 1e-3 * std::max(1.0, std::abs(d2))));
            }
}

TEST_CASE("sum-rate trend flags")
{
    const SumRateTrend sub = sumrate_trend(Structure::Sub, kP25, 4, 3);
    CHECK_THAT(sub.xi, WithinAbs(235.857, 1e-3));
    CHECK(sub.increasing);
    CHECK(sub.second_derivative < 0);
    CHECK_FALSE(sub.threshold.has_value());

    // full: increasing iff xi > 3.92 K^2, consistent with the sign of f' away from the threshold
    for (const double K : {2.0, 4.0, 6.0, 8.0, 12.0})
    {
        const SumRateTrend t = sumrate_trend(Structure::Full, 100.0, K, 3);
        REQUIRE(t.threshold.has_value());
        CHECK_THAT(*t.threshold, WithinAbs(3.92 * K * K, 1e-12));
        if (std::abs(t.xi / (K * K) - 3.92) > 0.05)
            CHECK(t.increasing == (t.first_derivative > 0));
    }
    CHECK_THROWS_AS(sumrate_trend(Structure::Sub, 10.0, 1.0, 3), UnsupportedK);
}

TEST_CASE("required_b1 closed form")
{
    CHECK_THAT(required_b1(Structure::Sub, 316.23, 4, 2.0), WithinAbs(0.8707, 1e-3));
    CHECK_THAT(required_b1(Structure::Full, 316.23, 4, 2.0), WithinAbs(0.9070, 1e-3));

    // Taylor-model inversion: with sinc^2(d) ~ 1 - d^2/3 the rate hits log2(b1) exactly
    for (const Structure s : {Structure::Sub, Structure::Full})
        for (const double target : {5.0, 20.0, 40.0})
        {
            const double P = 1000.0, K = 4;
            const double b = required_b1(s, P, 4, target);
            const double d = kPi / std::exp2(b);
            const double kpow = s == Structure::Sub ? K : K * K;
            CHECK_THAT(std::log2(1 + kPi * P * (1 - d * d / 3) / (4 * kpow)), WithinAbs(std::log2(target), 1e-10));
        }

    // exact inversion agrees where the expansion is accurate (B1 >= 3)
    const double P = 1000.0;
    const double cap = kPi * P / 16.0 + 1.0;
    const double target = 0.97 * (cap - 1.0) + 1.0;
    const double taylor = required_b1(Structure::Sub, P, 4, target);
    REQUIRE(taylor >= 3.0);
    const double exact = bisect(
        [&](double b) {
            const double d = kPi / std::exp2(b);
            return std::log2(1 + kPi * P * std::pow(std::sin(d) / d, 2) / 16.0) - std::log2(target);
        },
        0.5, 20.0);
    CHECK_THAT(taylor, WithinAbs(exact, 0.05));

    CHECK_THROWS_AS(required_b1(Structure::Sub, 316.23, 4, 0.5), InvalidTarget);
    CHECK_THROWS_AS(required_b1(Structure::Sub, 316.23, 4, kPi * 316.23 / 16 + 1), TargetInfeasible);
    CHECK_THROWS_AS(required_b1(Structure::Sub, 316.23, 4, 1e6), TargetInfeasible);
}

TEST_CASE("required_b2 holds the corr loss bound at the target")
{
    CHECK_THAT(required_b2(Structure::Sub, 25, 64, 4, 2.0), WithinAbs(11.669, 1e-3));
    CHECK_THAT(required_b2(Structure::Full, 25, 64, 4, 2.0), WithinAbs(-0.331, 1e-3));
    CHECK_THAT(required_b2(Structure::Sub, 35, 64, 4, 2.0) - required_b2(Structure::Sub, 25, 64, 4, 2.0),
               WithinAbs(3 * std::log2(10.0), 1e-9));

    for (const Structure s : {Structure::Sub, Structure::Full})
        for (const double target : {1.1, 1.5, 3.0})
        {
            const double b2 = required_b2(s, 30, 128, 8, target);
            const double P = std::pow(10.0, 3.0);
            CHECK_THAT(loss_bound(s, CodebookKind::CorrBased, P, 128, 8, 3, b2), WithinAbs(std::log2(target), 1e-10));
        }
    CHECK_THROWS_AS(required_b2(Structure::Sub, 25, 64, 4, 1.0), InvalidTarget);
    CHECK_THROWS_AS(required_b2(Structure::Sub, 25, 64, 1, 2.0), UnsupportedK);
}

TEST_CASE("delta_b2 equalises the RVQ and corr loss bounds")
{
    CHECK_THAT(delta_b2(Structure::Sub, 64, 4, 3), WithinAbs(5.976, 1e-3));
    CHECK_THAT(delta_b2(Structure::Sub, 64, 8, 3), WithinAbs(-1.613, 1e-3));
    for (const Structure s : {Structure::Sub, Structure::Full})
        for (const std::size_t M : {32u, 64u, 256u, 1024u})
            for (const std::size_t K : {2u, 4u, 8u})
            {
                const double b2 = 8.0, P = 200.0;
                const double extra = delta_b2(s, M, K, 3);
                CHECK_THAT(loss_bound(s, CodebookKind::Rvq, P, M, K, 3, b2 + extra),
                           WithinAbs(loss_bound(s, CodebookKind::CorrBased, P, M, K, 3, b2), 1e-10));
            }
}

TEST_CASE("crossover at the worked example")
{
    const CrossoverReport r = crossover(316.23, 64, 4, 3, 6);
    CHECK_THAT(r.min_antennas, WithinAbs(64.3206, 1e-3));
    CHECK_THAT(r.max_power, WithinAbs(314.518, 1e-2));
    CHECK_THAT(r.delta_r1, WithinAbs(-0.00432, 1e-4));
    CHECK(r.preferred == Structure::Full);
    CHECK_THAT(r.delta_r1, WithinAbs(net_rate(Structure::Sub, CodebookKind::CorrBased, 316.23, 64, 4, 3, 6) -
                                         net_rate(Structure::Full, CodebookKind::CorrBased, 316.23, 64, 4, 3, 6),
                                     1e-12));
}

TEST_CASE("crossover conditions agree in sign across a grid")
{
    int checked = 0;
    for (const std::size_t K : {2u, 3u, 4u, 8u, 16u})
        for (const std::size_t M : {16u, 32u, 64u, 128u, 256u, 1024u})
            for (const double pdb : {-10.0, 0.0, 10.0, 20.0, 25.0, 30.0, 40.0})
                for (const int b1 : {1, 2, 3, 6})
                    for (const double b2 : {2.0, 4.0, 6.0, 10.0, 16.0})
                    {
                        const double P = std::pow(10.0, pdb / 10.0);
                        const CrossoverReport r = crossover(P, M, K, b1, b2);
                        if (std::abs(r.delta_r1) < 1e-9)
                            continue;
                        const bool sub = r.delta_r1 > 0;
                        CHECK(sub == (static_cast<double>(M) > r.min_antennas));
                        CHECK(sub == (r.max_power > P));
                        ++checked;
                    }
    CHECK(checked > 3000);
}

TEST_CASE("amplifier gain threshold")
{
    const double eta = amplifier_gain_threshold(316.23, 64, 4, 3, 6);
    CHECK_THAT(eta, WithinAbs(0.99826, 1e-4));
    CHECK_THAT(full_power_gain_root(316.23, 64, 4, 3, 6), WithinAbs(0.99601, 1e-4));
    CHECK_THAT(amplifier_gain_threshold(316.23, 1024, 4, 3, 6), WithinAbs(2.533, 1e-3));

    // bisection on (1 + e c)(1 + e b) = (1 + a)(1 + d)
    for (const std::size_t M : {32u, 64u, 256u})
        for (const double P : {10.0, 100.0, 1000.0})
        {
            const double K = 4, t = std::exp2(-6.0 / 3.0);
            const double s = std::pow(std::sin(kPi / 8) / (kPi / 8), 2);
            const double a = kPi * P * s / (4 * K), c = kPi * P * s / (4 * K * K);
            const double b = P * (K - 1) * t / M, d = P * (K - 1) * t / (M * K * K);
            const double oracle =
                bisect([&](double e) { return (1 + e * c) * (1 + e * b) - (1 + a) * (1 + d); }, 0.0, 1e6);
            CHECK_THAT(amplifier_gain_threshold(P, M, 4, 3, 6), WithinRel(oracle, 1e-9));
        }

    // on the crossover both gains are 1
    const double Pstar = bisect([](double P) { return crossover(P, 64, 4, 3, 6).delta_r1; }, 10.0, 3000.0);
    CHECK_THAT(amplifier_gain_threshold(Pstar, 64, 4, 3, 6), WithinAbs(1.0, 1e-6));
    CHECK_THAT(full_power_gain_root(Pstar, 64, 4, 3, 6), WithinAbs(1.0, 1e-6));
}

TEST_CASE("theory report")
{
    TheoryInput in;
    in.rate_target = 1e9; // infeasible: reported as a note
    in.loss_target = 2.0;
    const ClosedFormReport r = theory_report(in);
    const std::string text = format_report(r);
    CHECK_THAT(text, ContainsSubstring("sub.rate = 5.906"));
    CHECK_THAT(text, ContainsSubstring("full.corr.loss_bound = 0.126"));
    CHECK_THAT(text, ContainsSubstring("crossover.eta = "));
    CHECK_THAT(text, ContainsSubstring("note = sub.required_b1"));
    CHECK_THAT(text, ContainsSubstring("sub.required_b2 = "));

    const ClosedFormReport adv = advise_report(64, 4, 25, 3, 6);
    CHECK_THAT(format_report(adv), ContainsSubstring("crossover.preferred_sub = 0"));
    CHECK_FALSE(advise_report(64, 1, 25, 3, 6).notes.empty());
}
