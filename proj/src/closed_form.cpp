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

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

namespace hybrid::closed_form
{
    namespace
    {
        constexpr double kPi = std::numbers::pi;
        constexpr double kFullThreshold = 3.92;

        double zeta(Structure s) { return s == Structure::Sub ? 0.0 : 1.0; }

        double sinc_sq(AnalogBits b1)
        {
            const double v = sinc(phase_step(b1));
            return v * v;
        }

        double distortion_law(double feedback_bits, std::size_t users)
        {
            return std::exp2(-feedback_bits / static_cast<double>(users - 1));
        }

        void require_multiuser(std::size_t users, const char *what)
        {
            if (users < 2)
                throw UnsupportedK(std::string(what) + ": requires K >= 2");
        }

        void require_positive_power(double power, const char *what)
        {
            if (!(power > 0.0) || !std::isfinite(power))
                throw ConfigError(std::string(what) + ": P must be positive");
        }

        // Per-user SNR terms and corr-codebook loss terms of the crossover analysis.
        struct CrossoverTerms
        {
            double sub_snr, full_snr, sub_loss, full_loss;
        };

        CrossoverTerms crossover_terms(double P, std::size_t M, std::size_t K, AnalogBits b1, double B2)
        {
            const double k = static_cast<double>(K), m = static_cast<double>(M);
            const double s = sinc_sq(b1), t = distortion_law(B2, K);
            return {kPi * P * s / (4.0 * k), kPi * P * s / (4.0 * k * k), P * (k - 1.0) * t / m,
                    P * (k - 1.0) * t / (m * k * k)};
        }
    }

    double sinc(double x)
    {
        if (std::abs(x) < 1e-8)
            return 1.0 - x * x / 6.0;
        return std::sin(x) / x;
    }

    double phase_step(AnalogBits analog_bits)
    {
        if (!analog_bits)
            return 0.0;
        if (*analog_bits < 1)
            throw ConfigError("B1: must be >= 1");
        return kPi / std::exp2(static_cast<double>(*analog_bits));
    }

    AsymptoticMoments moments(Structure structure, std::size_t users, AnalogBits analog_bits)
    {
        AsymptoticMoments m;
        m.delta = phase_step(analog_bits);
        m.sinc_delta = sinc(m.delta);
        const double sc = m.sinc_delta * std::cos(m.delta);
        m.omega1 = 0.5 * (1.0 + sc) - kPi / 4.0 * m.sinc_delta * m.sinc_delta;
        m.omega2 = 0.5 * (1.0 - sc);
        m.rho = rho(structure, users, analog_bits);
        return m;
    }

    double rho(Structure structure, std::size_t users, AnalogBits analog_bits)
    {
        if (users < 1)
            throw ConfigError("K: must be >= 1");
        const double base = std::sqrt(kPi) / 2.0 * sinc(phase_step(analog_bits));
        return structure == Structure::Sub ? base : base / std::sqrt(static_cast<double>(users));
    }

    double asymptotic_rate(Structure structure, double power, std::size_t users, AnalogBits analog_bits)
    {
        require_positive_power(power, "asymptotic_rate");
        const double r = rho(structure, users, analog_bits);
        return std::log2(1.0 + power / static_cast<double>(users) * r * r);
    }

    SumRateTrend sumrate_trend(Structure structure, double power, double users, AnalogBits analog_bits)
    {
        require_positive_power(power, "sumrate_trend");
        if (!(users > 1.0))
            throw UnsupportedK("sumrate_trend: requires K > 1");

        const double K = users;
        SumRateTrend tr;
        tr.xi = kPi * power / 4.0 * sinc_sq(analog_bits);
        const double xi = tr.xi;
        if (structure == Structure::Sub)
        {
            tr.first_derivative = std::log2(1.0 + xi / K) - xi / ((K + xi) * std::numbers::ln2);
            tr.second_derivative = xi / ((K + xi) * std::numbers::ln2) * (1.0 / (K + xi) - 1.0 / K);
            tr.increasing = tr.first_derivative > 0.0;
        }
        else
        {
            const double K2 = K * K;
            tr.first_derivative = std::log2(1.0 + xi / K2) - 2.0 * xi / ((K2 + xi) * std::numbers::ln2);
            tr.second_derivative =
                (-2.0 * xi / (K * (K2 + xi)) + 4.0 * xi * K / ((K2 + xi) * (K2 + xi))) / std::numbers::ln2;
            tr.threshold = kFullThreshold * K2;
            tr.increasing = xi > *tr.threshold;
        }
        return tr;
    }

    double loss_bound(Structure structure, CodebookKind kind, double power, std::size_t antennas, std::size_t users,
                      AnalogBits analog_bits, double feedback_bits)
    {
        require_multiuser(users, "loss_bound");
        require_positive_power(power, "loss_bound");
        if (antennas < users)
            throw ConfigError("loss_bound: requires M >= K");

        const double K = static_cast<double>(users), M = static_cast<double>(antennas);
        const double t = distortion_law(feedback_bits, users);
        if (kind == CodebookKind::CorrBased)
        {
            const double k_pow = structure == Structure::Sub ? 1.0 : K * K;
            return std::log2(1.0 + power * (K - 1.0) / (M * k_pow) * t);
        }
        const double k_pow = std::pow(K, 1.0 + zeta(structure));
        return std::log2(1.0 + kPi * power / (4.0 * k_pow) * sinc_sq(analog_bits) * t);
    }

    double net_rate(Structure structure, CodebookKind kind, double power, std::size_t antennas, std::size_t users,
                    AnalogBits analog_bits, double feedback_bits)
    {
        return asymptotic_rate(structure, power, users, analog_bits) -
               loss_bound(structure, kind, power, antennas, users, analog_bits, feedback_bits);
    }

    double required_b1(Structure structure, double power, std::size_t users, double target)
    {
        require_positive_power(power, "required_b1");
        if (users < 1)
            throw ConfigError("required_b1: K must be >= 1");
        if (!(target >= 1.0))
            throw InvalidTarget("required_b1: rate target b1 must be >= 1 (a rate of log2(b1) >= 0)");

        const double k_pow = std::pow(static_cast<double>(users), 1.0 + zeta(structure));
        const double x = 4.0 * k_pow / (kPi * power) * (target - 1.0);
        // x within rounding of 1 is the boundary itself, where the bit count diverges
        if (x >= 1.0 - 1e-12)
            throw TargetInfeasible("required_b1: target exceeds pi P / (4 K^(1+zeta)) + 1 = " +
                                   std::to_string(kPi * power / (4.0 * k_pow) + 1.0));
        return std::log2(kPi / std::sqrt(3.0)) - 0.5 * std::log2(1.0 - x);
    }

    double required_b2(Structure structure, double power_db, std::size_t antennas, std::size_t users, double target)
    {
        require_multiuser(users, "required_b2");
        if (!(target > 1.0))
            throw InvalidTarget("required_b2: loss target b2 must be > 1");
        const double K = static_cast<double>(users), M = static_cast<double>(antennas);
        const double per_user = std::log2(10.0) / 10.0 * power_db -
                                std::log2(M * std::pow(K, 2.0 * zeta(structure)) / (K - 1.0)) -
                                std::log2(target - 1.0);
        return (K - 1.0) * per_user;
    }

    double delta_b2(Structure structure, std::size_t antennas, std::size_t users, AnalogBits analog_bits)
    {
        require_multiuser(users, "delta_b2");
        const double K = static_cast<double>(users), M = static_cast<double>(antennas);
        const double denom = 4.0 * std::pow(K, 1.0 - zeta(structure)) * (K - 1.0);
        return (K - 1.0) * (std::log2(M) + std::log2(kPi * sinc_sq(analog_bits) / denom));
    }

    CrossoverReport crossover(double power, std::size_t antennas, std::size_t users, AnalogBits analog_bits,
                              double feedback_bits)
    {
        require_multiuser(users, "crossover");
        require_positive_power(power, "crossover");
        const CrossoverTerms x = crossover_terms(power, antennas, users, analog_bits, feedback_bits);
        const double K = static_cast<double>(users), M = static_cast<double>(antennas);
        const double s = sinc_sq(analog_bits), t = distortion_law(feedback_bits, users);

        CrossoverReport r;
        r.delta_r1 = (std::log2(1.0 + x.sub_snr) - std::log2(1.0 + x.sub_loss)) -
                     (std::log2(1.0 + x.full_snr) - std::log2(1.0 + x.full_loss));
        r.min_antennas = t * (4.0 * (K * K - 1.0) / (kPi * s) + (1.0 - 1.0 / K) * power);
        r.max_power = M * (1.0 / t) * K / (K - 1.0) - 4.0 * K * (K + 1.0) / (kPi * s);
        r.preferred = r.delta_r1 >= 0.0 ? Structure::Sub : Structure::Full;
        return r;
    }

    double amplifier_gain_threshold(double power, std::size_t antennas, std::size_t users, AnalogBits analog_bits,
                                    double feedback_bits)
    {
        require_multiuser(users, "amplifier_gain_threshold");
        require_positive_power(power, "amplifier_gain_threshold");
        const double K = static_cast<double>(users), M = static_cast<double>(antennas);
        const double s = sinc_sq(analog_bits), t = distortion_law(feedback_bits, users);

        const double i1 = kPi * power * power * (K - 1.0) * s * t / (4.0 * M * K * K);
        const double i2 = kPi * power * s / (4.0 * K * K) + power * (K - 1.0) * t / M;
        const double i3 = kPi * power * s / (4.0 * K) + power * (K - 1.0) * t / (M * K * K) + i1 / K;
        return -i2 / (2.0 * i1) + std::sqrt(i3 / i1 + i2 * i2 / (4.0 * i1 * i1));
    }

    double full_power_gain_root(double power, std::size_t antennas, std::size_t users, AnalogBits analog_bits,
                                double feedback_bits)
    {
        require_multiuser(users, "full_power_gain_root");
        require_positive_power(power, "full_power_gain_root");
        const CrossoverTerms x = crossover_terms(power, antennas, users, analog_bits, feedback_bits);
        return (x.sub_snr - x.sub_loss) / (x.full_snr * (1.0 + x.sub_loss) - x.full_loss * (1.0 + x.sub_snr));
    }

    // ---------------------------------------------------------------------------------------

    namespace
    {
        std::string bits_text(AnalogBits b) { return b ? std::to_string(*b) : "ideal"; }

        std::string num(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.9g", v);
            return buf;
        }

        void add(ClosedFormReport &r, const std::string &key, const std::function<double()> &f, const std::string &unit)
        {
            try
            {
                r.values.push_back({key, f(), unit});
            }
            catch (const std::exception &e)
            {
                r.notes.push_back(key + ": " + e.what());
            }
        }
    }

    ClosedFormReport theory_report(const TheoryInput &in)
    {
        ClosedFormReport r;
        r.inputs = {{"M", std::to_string(in.antennas)},
                    {"K", std::to_string(in.users)},
                    {"P_db", num(in.power_db)},
                    {"B1", bits_text(in.analog_bits)}};
        if (in.feedback_bits)
            r.inputs.emplace_back("B2", num(*in.feedback_bits));
        if (in.rate_target)
            r.inputs.emplace_back("rate_target", num(*in.rate_target));
        if (in.loss_target)
            r.inputs.emplace_back("loss_target", num(*in.loss_target));

        const double P = db_to_linear(in.power_db);
        const std::size_t M = in.antennas, K = in.users;
        const AnalogBits b1 = in.analog_bits;

        std::vector<Structure> structures;
        if (in.structure)
            structures.push_back(*in.structure);
        else
            structures = {Structure::Sub, Structure::Full};

        {
            const AsymptoticMoments m = moments(Structure::Sub, K, b1);
            add(r, "delta", [&] { return m.delta; }, "rad");
            add(r, "sinc_delta", [&] { return m.sinc_delta; }, "");
            add(r, "omega1", [&] { return m.omega1; }, "");
            add(r, "omega2", [&] { return m.omega2; }, "");
        }

        for (const Structure s : structures)
        {
            const std::string p = to_string(s) + ".";
            add(r, p + "rho", [&] { return rho(s, K, b1); }, "");
            add(r, p + "rate", [&] { return asymptotic_rate(s, P, K, b1); }, "bits/s/Hz");
            add(r, p + "xi", [&] { return sumrate_trend(s, P, static_cast<double>(K), b1).xi; }, "");
            add(r, p + "sumrate_slope", [&] { return sumrate_trend(s, P, static_cast<double>(K), b1).first_derivative; },
                "bits/s/Hz per user");
            add(r, p + "sumrate_curvature",
                [&] { return sumrate_trend(s, P, static_cast<double>(K), b1).second_derivative; }, "");
            add(r, p + "sumrate_increasing",
                [&] { return sumrate_trend(s, P, static_cast<double>(K), b1).increasing ? 1.0 : 0.0; }, "bool");
            if (in.feedback_bits)
            {
                const double B2 = *in.feedback_bits;
                for (const CodebookKind kind : {CodebookKind::CorrBased, CodebookKind::Rvq})
                {
                    const std::string q = p + to_string(kind) + ".";
                    add(r, q + "loss_bound", [&] { return loss_bound(s, kind, P, M, K, b1, B2); }, "bits/s/Hz");
                    add(r, q + "net_rate", [&] { return net_rate(s, kind, P, M, K, b1, B2); }, "bits/s/Hz");
                    add(r, q + "loss_ratio",
                        [&] { return loss_bound(s, kind, P, M, K, b1, B2) / asymptotic_rate(s, P, K, b1); }, "");
                }
            }
            if (in.rate_target)
                add(r, p + "required_b1", [&] { return required_b1(s, P, K, *in.rate_target); }, "bits");
            if (in.loss_target)
                add(r, p + "required_b2", [&] { return required_b2(s, in.power_db, M, K, *in.loss_target); }, "bits");
            add(r, p + "delta_b2", [&] { return delta_b2(s, M, K, b1); }, "bits");
        }

        if (in.feedback_bits)
        {
            const ClosedFormReport adv = advise_report(M, K, in.power_db, b1, *in.feedback_bits);
            r.values.insert(r.values.end(), adv.values.begin(), adv.values.end());
            r.notes.insert(r.notes.end(), adv.notes.begin(), adv.notes.end());
        }
        return r;
    }

    ClosedFormReport advise_report(std::size_t antennas, std::size_t users, double power_db, AnalogBits analog_bits,
                                   double feedback_bits)
    {
        ClosedFormReport r;
        r.inputs = {{"M", std::to_string(antennas)},
                    {"K", std::to_string(users)},
                    {"P_db", num(power_db)},
                    {"B1", bits_text(analog_bits)},
                    {"B2", num(feedback_bits)}};
        const double P = db_to_linear(power_db);
        try
        {
            const CrossoverReport c = crossover(P, antennas, users, analog_bits, feedback_bits);
            r.values.push_back({"crossover.delta_r1", c.delta_r1, "bits/s/Hz"});
            r.values.push_back({"crossover.min_antennas", c.min_antennas, "antennas"});
            r.values.push_back({"crossover.max_power", c.max_power, "linear"});
            r.values.push_back({"crossover.preferred_sub", c.preferred == Structure::Sub ? 1.0 : 0.0, "bool"});
        }
        catch (const std::exception &e)
        {
            r.notes.push_back(std::string("crossover: ") + e.what());
        }
        add(r, "crossover.eta", [&] { return amplifier_gain_threshold(P, antennas, users, analog_bits, feedback_bits); },
            "");
        return r;
    }

    std::string format_report(const ClosedFormReport &report)
    {
        std::ostringstream os;
        for (const auto &[k, v] : report.inputs)
            os << "input." << k << " = " << v << '\n';
        for (const auto &e : report.values)
            os << e.key << " = " << num(e.value) << (e.unit.empty() ? "" : "  # " + e.unit) << '\n';
        for (const auto &n : report.notes)
            os << "note = " << n << '\n';
        return os.str();
    }
}
