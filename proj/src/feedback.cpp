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

#include "hybrid/feedback.hpp"
#include "hybrid/closed_form.hpp"
#include "hybrid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hybrid
{
    namespace
    {
        constexpr double kZeroNorm = 1e-14;

        void check_bits(int bits)
        {
            if (bits < 1 || bits > 24)
                throw std::invalid_argument("codebook: bits must be in [1, 24]");
        }
    }

    EffectiveChannelSet effective_channels(const ChannelMatrix &channel, const AnalogPrecoder &analog)
    {
        const CMatrix &H = channel.H;
        const CMatrix &A = analog.a_hat;
        if (H.rows() != A.rows() || H.cols() != A.cols())
            throw DimensionMismatch("effective_channels: channel and analog precoder shapes differ");

        const std::size_t M = H.rows(), K = H.cols();
        CMatrix G(K, K);
        // G(i, k) = sum_m conj(a_{m,i}) h_{m,k}; skip the structural zeros of the sub-connected network.
        for (std::size_t i = 0; i < K; ++i)
            for (std::size_t m = 0; m < M; ++m)
            {
                const cdouble a = std::conj(A(m, i));
                if (a == cdouble(0.0, 0.0))
                    continue;
                for (std::size_t k = 0; k < K; ++k)
                    G(i, k) += a * H(m, k);
            }
        return {std::move(G)};
    }

    CorrelationMatrix theoretical_correlation(const SystemConfig &cfg, std::size_t user)
    {
        cfg.validate();
        const std::size_t K = cfg.users;
        if (user >= K)
            throw std::out_of_range("theoretical_correlation: user index out of range");

        const double s = std::pow(closed_form::sinc(closed_form::phase_step(cfg.analog_bits)), 2);
        const double quarter_pi = std::numbers::pi / 4.0;
        double own = 0.0, other = 0.0;
        if (cfg.structure == Structure::Sub)
        {
            const double N = static_cast<double>(cfg.antennas_per_chain());
            own = quarter_pi * s + 1.0 / N - quarter_pi * s / N;
            other = 1.0 / N;
        }
        else
        {
            const double MK = static_cast<double>(cfg.antennas * K);
            own = quarter_pi * s / static_cast<double>(K) + 1.0 / MK - quarter_pi * s / MK;
            other = 1.0 / MK;
        }
        std::vector<double> d(K, other);
        d[user] = own;
        return {CMatrix::diagonal(d), CorrelationSource::Theoretical};
    }

    CorrelationMatrix empirical_correlation(std::span<const CVector> samples)
    {
        if (samples.empty())
            throw std::invalid_argument("empirical_correlation: no samples");
        const std::size_t K = samples.front().size();
        CMatrix R(K, K);
        for (const auto &g : samples)
        {
            if (g.size() != K)
                throw DimensionMismatch("empirical_correlation: samples differ in length");
            for (std::size_t i = 0; i < K; ++i)
                for (std::size_t j = 0; j < K; ++j)
                    R(i, j) += g[i] * std::conj(g[j]);
        }
        return {R * cdouble(1.0 / static_cast<double>(samples.size()), 0.0), CorrelationSource::Empirical};
    }

    Codebook rvq_codebook(std::size_t dim, int bits, Rng &rng)
    {
        check_bits(bits);
        if (dim < 1)
            throw std::invalid_argument("rvq_codebook: dimension must be >= 1");
        const std::size_t size = std::size_t{1} << bits;
        Codebook cb;
        cb.kind = CodebookKind::Rvq;
        cb.vectors.reserve(size);
        for (std::size_t i = 0; i < size; ++i)
        {
            CVector v(dim);
            for (auto &x : v)
                x = rng.complex_normal();
            const double n = norm(v);
            for (auto &x : v)
                x /= n;
            cb.vectors.push_back(std::move(v));
        }
        return cb;
    }

    Codebook corr_codebook(const CorrelationMatrix &R, int bits, Rng &rng)
    {
        check_bits(bits);
        const CMatrix S = psd_sqrt(R.R);
        const std::size_t dim = S.rows();
        const std::size_t size = std::size_t{1} << bits;

        Codebook cb;
        cb.kind = CodebookKind::CorrBased;
        cb.shaping = R.R;
        cb.vectors.reserve(size);
        CVector v(dim);
        for (std::size_t i = 0; i < size; ++i)
        {
            for (auto &x : v)
                x = rng.complex_normal();
            CVector c = S * v;
            const double n = norm(c);
            if (n < kZeroNorm)
                throw ZeroVector("corr_codebook: shaped vector vanished");
            for (auto &x : c)
                x /= n;
            cb.vectors.push_back(std::move(c));
        }
        return cb;
    }

    CodewordChoice select_codeword(std::span<const cdouble> g, const Codebook &cb)
    {
        if (cb.vectors.empty())
            throw std::invalid_argument("select_codeword: empty codebook");
        if (norm(g) < kZeroNorm)
            throw ZeroVector("select_codeword: effective channel has (near) zero norm");

        std::size_t best = 0;
        double best_gain = -1.0;
        for (std::size_t i = 0; i < cb.vectors.size(); ++i)
        {
            const double gain = std::norm(dot(g, cb.vectors[i]));
            if (gain > best_gain)
            {
                best_gain = gain;
                best = i;
            }
        }
        return {best, cb.vectors[best]};
    }

    double distortion(std::span<const cdouble> g, std::span<const cdouble> c)
    {
        const double gn = norm(g);
        if (gn < kZeroNorm)
            throw ZeroVector("distortion: effective channel has (near) zero norm");
        const double overlap = std::norm(dot(g, c)) / (gn * gn);
        return std::clamp(1.0 - overlap, 0.0, 1.0);
    }
}
