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

#ifndef HYBRID_CLOSED_FORM_HPP
#define HYBRID_CLOSED_FORM_HPP

#include "hybrid/system_config.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

// Large-array analysis of quantized hybrid precoding with divider/combiner dissipation.
//
// Notation used throughout: delta = pi / 2^B1 is the half-width of the phase quantization
// error, s = sinc^2(delta), and t = 2^{-B2/(K-1)} is the RVQ distortion law. zeta selects
// the structure: 0 for sub-connected, 1 for fully-connected. Rates and losses are per user
// in bits/s/Hz. P is linear unless a parameter name says _db.
namespace hybrid::closed_form
{
    double sinc(double x);

    // pi / 2^B1, or 0 for ideal phases.
    double phase_step(AnalogBits analog_bits);

    struct AsymptoticMoments
    {
        double delta = 0.0;
        double sinc_delta = 1.0;
        double omega1 = 0.0; // variance of the in-phase part of one compensated entry
        double omega2 = 0.0; // variance of the quadrature part
        double rho = 0.0;    // limit of the diagonal of the effective channel matrix
    };

    AsymptoticMoments moments(Structure structure, std::size_t users, AnalogBits analog_bits);

    // sub: (sqrt(pi)/2) sinc(delta); full: sqrt(pi/(4K)) sinc(delta).
    double rho(Structure structure, std::size_t users, AnalogBits analog_bits);

    // log2(1 + (P/K) rho^2), i.e. log2(1 + pi P s / (4 K^{1+zeta})).
    double asymptotic_rate(Structure structure, double power, std::size_t users, AnalogBits analog_bits);

    // Sum rate f(K) = K * asymptotic_rate with K relaxed to a real number.
    struct SumRateTrend
    {
        double xi = 0.0;                // (pi P / 4) s
        double first_derivative = 0.0;  // f'(K)
        double second_derivative = 0.0; // f''(K)
        std::optional<double> threshold; // 3.92 K^2, fully-connected only
        bool increasing = false;        // sub: f'(K) > 0; full: xi > 3.92 K^2
    };

    SumRateTrend sumrate_trend(Structure structure, double power, double users, AnalogBits analog_bits);

    // Upper bound on the per-user loss from B2-bit feedback (B2 may be fractional).
    //   corr: log2(1 + P (K-1) t / (M K^{2 zeta}))
    //   rvq:  log2(1 + pi P s t / (4 K^{1+zeta}))
    // Throws UnsupportedK for K < 2.
    double loss_bound(Structure structure, CodebookKind kind, double power, std::size_t antennas, std::size_t users,
                      AnalogBits analog_bits, double feedback_bits);

    // asymptotic_rate - loss_bound.
    double net_rate(Structure structure, CodebookKind kind, double power, std::size_t antennas, std::size_t users,
                    AnalogBits analog_bits, double feedback_bits);

    // Phase-shifter bits needed to hold a per-user rate of log2(target), using the
    // second-order expansion sinc^2(x) ~ 1 - x^2/3. Real-valued; the caller rounds.
    // Throws InvalidTarget for target < 1 and TargetInfeasible for target >= pi P / (4 K^{1+zeta}) + 1.
    double required_b1(Structure structure, double power, std::size_t users, double target);

    // Feedback bits per user that hold the corr-codebook loss bound at log2(target).
    // Throws UnsupportedK for K < 2 and InvalidTarget for target <= 1.
    double required_b2(Structure structure, double power_db, std::size_t antennas, std::size_t users, double target);

    // Extra bits RVQ needs over the correlation-based codebook for the same loss target:
    //   (K-1) [log2 M + log2(pi s / (4 K^{1-zeta} (K-1)))]
    // Can be negative for small M or large K.
    double delta_b2(Structure structure, std::size_t antennas, std::size_t users, AnalogBits analog_bits);

    struct CrossoverReport
    {
        double delta_r1 = 0.0;      // net_rate(sub) - net_rate(full), corr codebook
        double min_antennas = 0.0;  // sub preferred iff M >= min_antennas
        double max_power = 0.0;     // sub preferred iff P <= max_power
        Structure preferred = Structure::Sub;
    };

    CrossoverReport crossover(double power, std::size_t antennas, std::size_t users, AnalogBits analog_bits,
                              double feedback_bits);

    // Power-gain multiplier eta of the fully-connected amplifiers at which both structures give
    // equal net rate, from eta = -i2/(2 i1) + sqrt(i3/i1 + i2^2/(4 i1^2)) with
    //   i1 = pi P^2 (K-1) s t / (4 M K^2)
    //   i2 = pi P s / (4 K^2) + P (K-1) t / M
    //   i3 = pi P s / (4 K)   + P (K-1) t / (M K^2) + i1 / K
    // This is the positive root of (1 + eta c)(1 + eta b) = (1 + a)(1 + d) with a, c the sub/full
    // SNR terms and b, d the sub/full corr loss terms.
    double amplifier_gain_threshold(double power, std::size_t antennas, std::size_t users, AnalogBits analog_bits,
                                    double feedback_bits);

    // Root of net_rate_sub(P) = net_rate_full(eta P) with eta applied to both fully-connected
    // terms, (a - b) / (c (1 + b) - d (1 + a)). Differs from amplifier_gain_threshold() away from
    // the crossover; both equal 1 on it.
    double full_power_gain_root(double power, std::size_t antennas, std::size_t users, AnalogBits analog_bits,
                                double feedback_bits);

    // ---------------------------------------------------------------------------------------
    // Flat key/value report used by the CLI.

    struct TheoryInput
    {
        std::optional<Structure> structure; // nullopt: report both
        std::size_t antennas = 64;
        std::size_t users = 4;
        double power_db = 25.0;
        AnalogBits analog_bits = 3;
        std::optional<double> feedback_bits = 10.0;
        std::optional<double> rate_target;  // argument of required_b1
        std::optional<double> loss_target;  // argument of required_b2
    };

    struct ReportEntry
    {
        std::string key;
        double value = 0.0;
        std::string unit;
    };

    struct ClosedFormReport
    {
        std::vector<std::pair<std::string, std::string>> inputs;
        std::vector<ReportEntry> values;
        std::vector<std::string> notes; // violated preconditions, one per skipped quantity
    };

    ClosedFormReport theory_report(const TheoryInput &in);
    ClosedFormReport advise_report(std::size_t antennas, std::size_t users, double power_db, AnalogBits analog_bits,
                                   double feedback_bits);

    std::string format_report(const ClosedFormReport &report);
}

#endif
