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

#include "hybrid/runner.hpp"
#include "hybrid/closed_form.hpp"
#include "hybrid/errors.hpp"
#include "hybrid/precoding.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

namespace hybrid
{
    namespace
    {
        std::string bits_label(const std::optional<int> &b, const char *none)
        {
            return b ? std::to_string(*b) : std::string(none);
        }

        CodebookKind kind_of(CodebookChoice c)
        {
            return c == CodebookChoice::Rvq ? CodebookKind::Rvq : CodebookKind::CorrBased;
        }

        Codebook draw_codebook(const PointContext &ctx, std::size_t user, Rng &rng)
        {
            const std::size_t K = ctx.point.system.users;
            const int bits = *ctx.point.system.feedback_bits;
            if (ctx.scenario->codebook == CodebookChoice::Rvq)
                return rvq_codebook(K, bits, rng);
            return corr_codebook(ctx.shaping[user], bits, rng);
        }

        // Calls body(i) for i in [0, n) on `workers` threads. Every index is written by exactly one
        // call, so the outcome is independent of scheduling.
        template <typename F>
        void parallel_for(std::size_t n, std::size_t workers, F body)
        {
            if (workers == 0)
                workers = std::max(1u, std::thread::hardware_concurrency());
            workers = std::min(workers, n);
            if (workers <= 1)
            {
                for (std::size_t i = 0; i < n; ++i)
                    body(i);
                return;
            }

            std::atomic<std::size_t> next{0};
            std::exception_ptr error;
            std::mutex error_mutex;
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    try
                    {
                        for (std::size_t i = next++; i < n; i = next++)
                            body(i);
                    }
                    catch (...)
                    {
                        std::lock_guard lock(error_mutex);
                        if (!error)
                            error = std::current_exception();
                        next = n;
                    }
                });
            for (auto &t : pool)
                t.join();
            if (error)
                std::rethrow_exception(error);
        }
    }

    PointContext prepare_point(const ScenarioConfig &sc, const ScenarioPoint &point)
    {
        PointContext ctx;
        ctx.scenario = &sc;
        ctx.point = point;
        if (sc.architecture != Architecture::Hybrid || sc.codebook == CodebookChoice::Perfect)
            return ctx;

        const SystemConfig &cfg = point.system;
        if (sc.codebook == CodebookChoice::Corr)
        {
            if (sc.shaping == Shaping::Theoretical)
            {
                for (std::size_t k = 0; k < cfg.users; ++k)
                    ctx.shaping.push_back(theoretical_correlation(cfg, k));
            }
            else
            {
                std::vector<std::vector<CVector>> samples(cfg.users);
                const Rng base(sc.master_seed, kShapingStream);
                for (std::size_t s = 0; s < kEmpiricalShapingSamples; ++s)
                {
                    Rng rng = base.derive(s);
                    const ChannelMatrix ch = generate_channel(cfg, sc.channel, rng);
                    const EffectiveChannelSet eff = effective_channels(ch, analog_precoder(ch, cfg));
                    for (std::size_t k = 0; k < cfg.users; ++k)
                        samples[k].push_back(eff.G.col(k));
                }
                for (std::size_t k = 0; k < cfg.users; ++k)
                    ctx.shaping.push_back(empirical_correlation(samples[k]));
            }
        }

        if (sc.fixed_codebook)
        {
            const Rng base(sc.master_seed, kFixedCodebookStream);
            for (std::size_t k = 0; k < cfg.users; ++k)
            {
                Rng rng = base.derive(1 + k);
                ctx.fixed_codebooks.push_back(draw_codebook(ctx, k, rng));
            }
        }
        return ctx;
    }

    std::vector<LinkResult> run_trial(const PointContext &ctx, std::size_t trial_index)
    {
        const ScenarioConfig &sc = *ctx.scenario;
        const SystemConfig &cfg = ctx.point.system;
        const std::size_t K = cfg.users;
        const Rng trial_rng(sc.master_seed, trial_index);

        Rng channel_rng = trial_rng.derive(0);
        const ChannelMatrix channel = generate_channel(cfg, sc.channel, channel_rng);

        std::vector<LinkResult> out;
        out.reserve(ctx.point.snr_db.size());
        try
        {
            if (sc.architecture == Architecture::FullyDigital)
            {
                for (const double snr : ctx.point.snr_db)
                    out.push_back(fully_digital_baseline(channel.H, db_to_linear(snr), K));
                return out;
            }

            const AnalogPrecoder analog = analog_precoder(channel, cfg);
            const EffectiveChannelSet eff = effective_channels(channel, analog);

            CMatrix G_hat = eff.G;
            FeedbackBasis basis;
            if (sc.codebook != CodebookChoice::Perfect)
            {
                basis = {cfg.feedback_bits, kind_of(sc.codebook)};
                for (std::size_t k = 0; k < K; ++k)
                {
                    const CVector g = eff.G.col(k);
                    if (sc.fixed_codebook)
                    {
                        G_hat.set_col(k, select_codeword(g, ctx.fixed_codebooks[k]).codeword);
                    }
                    else
                    {
                        Rng cb_rng = trial_rng.derive(1 + k);
                        G_hat.set_col(k, select_codeword(g, draw_codebook(ctx, k, cb_rng)).codeword);
                    }
                }
            }

            const DigitalPrecoder digital = sc.precoder == PrecoderKind::Zf ? zf_precoder(G_hat, analog.f_hat, basis)
                                                                            : mrt_precoder(G_hat, analog.f_hat, basis);
            const double radiated = radiated_power_fraction(analog, digital, cfg);
            for (const double snr : ctx.point.snr_db)
            {
                LinkResult r = sinr_from_effective(eff.G, digital.W, db_to_linear(snr));
                r.radiated_fraction = radiated;
                out.push_back(std::move(r));
            }
        }
        catch (const SingularMatrix &)
        {
            out.assign(ctx.point.snr_db.size(), LinkResult::degenerate_trial(K));
        }
        catch (const ZeroVector &)
        {
            out.assign(ctx.point.snr_db.size(), LinkResult::degenerate_trial(K));
        }
        return out;
    }

    LinkResult run_trial(const ScenarioConfig &sc, std::size_t trial_index)
    {
        sc.validate();
        const PointContext ctx = prepare_point(sc, expand_points(sc).front());
        return run_trial(ctx, trial_index).front();
    }

    LinkResult fully_digital_baseline(const CMatrix &H, double power, std::size_t users)
    {
        if (H.cols() != users)
            throw DimensionMismatch("fully_digital_baseline: H must have K columns");
        if (H.rows() < users)
            throw DimensionMismatch("fully_digital_baseline: requires M >= K");
        CMatrix U = H * gram_inverse(H);
        for (std::size_t k = 0; k < users; ++k)
        {
            const double n = norm(U.col(k));
            for (std::size_t m = 0; m < U.rows(); ++m)
                U(m, k) /= n;
        }
        LinkResult r = sinr_from_effective(H, U, power);
        r.radiated_fraction = 1.0;
        return r;
    }

    bool degeneracy_flagged(const ResultRow &row)
    {
        return row.trials > 0 &&
               static_cast<double>(row.degenerate_count) >= kDegeneracyThreshold * static_cast<double>(row.trials);
    }

    double pairwise_sum(std::span<const double> x)
    {
        if (x.size() <= 8)
        {
            double s = 0.0;
            for (const double v : x)
                s += v;
            return s;
        }
        const std::size_t half = x.size() / 2;
        return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
    }

    SampleStats sample_stats(std::span<const double> x)
    {
        std::vector<double> finite;
        finite.reserve(x.size());
        for (const double v : x)
            if (std::isfinite(v))
                finite.push_back(v);

        SampleStats st;
        st.count = finite.size();
        if (finite.empty())
        {
            st.mean = std::numeric_limits<double>::quiet_NaN();
            st.stderr_mean = std::numeric_limits<double>::quiet_NaN();
            return st;
        }
        const double n = static_cast<double>(finite.size());
        st.mean = pairwise_sum(finite) / n;
        if (finite.size() > 1)
        {
            for (double &v : finite)
                v = (v - st.mean) * (v - st.mean);
            st.stderr_mean = std::sqrt(pairwise_sum(finite) / (n - 1.0) / n);
        }
        return st;
    }

    std::vector<std::vector<std::vector<double>>> run_sum_rates(const ScenarioConfig &sc, const RunOptions &opts)
    {
        sc.validate();
        std::vector<std::vector<std::vector<double>>> out;
        for (const ScenarioPoint &point : expand_points(sc))
        {
            const PointContext ctx = prepare_point(sc, point);
            std::vector<std::vector<double>> per_snr(point.snr_db.size(), std::vector<double>(sc.trials));
            parallel_for(sc.trials, opts.workers, [&](std::size_t t) {
                const std::vector<LinkResult> res = run_trial(ctx, t);
                for (std::size_t s = 0; s < res.size(); ++s)
                    per_snr[s][t] = res[s].sum_rate;
            });
            out.push_back(std::move(per_snr));
        }
        return out;
    }

    std::vector<ResultRow> run_scenario(const ScenarioConfig &sc, const RunOptions &opts)
    {
        const std::vector<ScenarioPoint> points = expand_points(sc);
        const auto rates = run_sum_rates(sc, opts);
        const bool hybrid = sc.architecture == Architecture::Hybrid;
        const bool rayleigh = std::holds_alternative<RayleighModel>(sc.channel);

        struct Keyed
        {
            double sweep_value;
            double snr;
            ResultRow row;
        };
        std::vector<Keyed> keyed;
        for (std::size_t p = 0; p < points.size(); ++p)
        {
            const SystemConfig &cfg = points[p].system;
            for (std::size_t s = 0; s < points[p].snr_db.size(); ++s)
            {
                const double snr = points[p].snr_db[s];
                const SampleStats st = sample_stats(rates[p][s]);
                ResultRow row;
                row.scenario_id = sc.scenario_id;
                row.structure = hybrid ? to_string(cfg.structure) : "digital";
                row.channel = channel_name(sc.channel);
                row.codebook = to_string(sc.codebook);
                row.precoder = to_string(sc.precoder);
                row.M = cfg.antennas;
                row.K = cfg.users;
                row.B1 = hybrid ? bits_label(cfg.analog_bits, "ideal") : "";
                row.B2 = bits_label(cfg.feedback_bits, "perfect");
                row.snr_db = snr;
                row.trials = sc.trials;
                row.mean_sum_rate = st.mean;
                row.stderr_sum_rate = st.stderr_mean;
                row.mean_user_rate = st.mean / static_cast<double>(cfg.users);
                row.degenerate_count = sc.trials - st.count;

                if (hybrid && rayleigh)
                {
                    const double P = db_to_linear(snr);
                    row.theory_rate = closed_form::asymptotic_rate(cfg.structure, P, cfg.users, cfg.analog_bits);
                    if (sc.codebook != CodebookChoice::Perfect && sc.precoder == PrecoderKind::Zf)
                    {
                        row.theory_loss_bound =
                            closed_form::loss_bound(cfg.structure, kind_of(sc.codebook), P, cfg.antennas, cfg.users,
                                                    cfg.analog_bits, static_cast<double>(*cfg.feedback_bits));
                        row.theory_net_rate = *row.theory_rate - *row.theory_loss_bound;
                    }
                }
                keyed.push_back({points[p].sweep_value, snr, std::move(row)});
            }
        }

        std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed &a, const Keyed &b) {
            return a.sweep_value != b.sweep_value ? a.sweep_value < b.sweep_value : a.snr < b.snr;
        });
        std::vector<ResultRow> rows;
        rows.reserve(keyed.size());
        for (auto &k : keyed)
            rows.push_back(std::move(k.row));
        return rows;
    }
}
