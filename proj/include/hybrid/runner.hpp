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

#ifndef HYBRID_RUNNER_HPP
#define HYBRID_RUNNER_HPP

#include "hybrid/feedback.hpp"
#include "hybrid/link.hpp"
#include "hybrid/scenario.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hybrid
{
    // Random streams of one trial. Channel draws come from Rng(master_seed, trial).derive(0) and
    // user k's codebook from .derive(1 + k). With fixed_codebook the codebook streams hang off the
    // reserved stream kFixedCodebookStream instead, so every trial shares the same codebooks.
    inline constexpr std::uint64_t kFixedCodebookStream = ~std::uint64_t{0};
    inline constexpr std::uint64_t kShapingStream = ~std::uint64_t{0} - 1;

    // Number of effective-channel samples used to estimate R when shaping is empirical.
    inline constexpr std::size_t kEmpiricalShapingSamples = 4000;

    // Shared per-point state: the corr-codebook shaping matrices and, with fixed_codebook, the
    // codebooks themselves. Built once before the trials run.
    struct PointContext
    {
        const ScenarioConfig *scenario = nullptr;
        ScenarioPoint point;
        std::vector<CorrelationMatrix> shaping;  // one per user, corr codebook only
        std::vector<Codebook> fixed_codebooks;   // one per user, fixed_codebook only
    };

    PointContext prepare_point(const ScenarioConfig &sc, const ScenarioPoint &point);

    // One Monte-Carlo trial evaluated at every SNR of the point. The channel, analog network and
    // digital precoder do not depend on P, so they are built once and shared across SNRs.
    // A Gram solve rejected as singular gives LinkResult::degenerate_trial at every SNR.
    std::vector<LinkResult> run_trial(const PointContext &ctx, std::size_t trial_index);

    // Single-point convenience form: the first sweep point at its first SNR.
    LinkResult run_trial(const ScenarioConfig &sc, std::size_t trial_index);

    // ZF on the raw channel with unit-norm columns, U = H (H^H H)^-1, w_k = u_k / ||u_k||.
    LinkResult fully_digital_baseline(const CMatrix &H, double power, std::size_t users);

    struct ResultRow
    {
        std::string scenario_id;
        std::string structure; // sub | full | digital
        std::string channel;
        std::string codebook;
        std::string precoder;
        std::size_t M = 0;
        std::size_t K = 0;
        std::string B1; // bit count or "ideal"; empty for the fully-digital baseline
        std::string B2; // bit count or "perfect"
        double snr_db = 0.0;
        std::size_t trials = 0;
        double mean_sum_rate = 0.0;
        double stderr_sum_rate = 0.0;
        double mean_user_rate = 0.0;
        std::optional<double> theory_rate;
        std::optional<double> theory_loss_bound;
        std::optional<double> theory_net_rate;
        std::size_t degenerate_count = 0;
    };

    // A row is flagged once degenerate trials make up 0.1% of its trials.
    inline constexpr double kDegeneracyThreshold = 1e-3;
    bool degeneracy_flagged(const ResultRow &row);

    struct RunOptions
    {
        std::size_t workers = 0; // 0: hardware concurrency
    };

    // One row per (sweep value, SNR), sorted by sweep key then SNR. Statistics skip degenerate
    // trials. Output is identical for every worker count.
    std::vector<ResultRow> run_scenario(const ScenarioConfig &sc, const RunOptions &opts = {});

    // Per-trial sum rates of every point and SNR, indexed [point][snr][trial]; degenerate trials
    // hold NaN. Exposed for paired comparisons between scenarios sharing a seed.
    std::vector<std::vector<std::vector<double>>> run_sum_rates(const ScenarioConfig &sc, const RunOptions &opts = {});

    // Pairwise (cascade) sum, used for every mean so that results do not depend on scheduling.
    double pairwise_sum(std::span<const double> x);

    struct SampleStats
    {
        double mean = 0.0;
        double stderr_mean = 0.0; // sample standard deviation / sqrt(n); 0 for n = 1
        std::size_t count = 0;    // finite samples used
    };

    // Mean and standard error over the finite entries of x.
    SampleStats sample_stats(std::span<const double> x);
}

#endif
