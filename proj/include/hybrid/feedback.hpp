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

#ifndef HYBRID_FEEDBACK_HPP
#define HYBRID_FEEDBACK_HPP

#include "hybrid/analog.hpp"
#include "hybrid/channel.hpp"
#include "hybrid/linalg.hpp"
#include "hybrid/rng.hpp"
#include "hybrid/system_config.hpp"

#include <optional>
#include <span>
#include <vector>

namespace hybrid
{
    // G is K x K with column k equal to g_k = a_hat^H h_k (so g_k^H = h_k^H a_hat).
    struct EffectiveChannelSet
    {
        CMatrix G;
    };

    EffectiveChannelSet effective_channels(const ChannelMatrix &channel, const AnalogPrecoder &analog);

    struct Codebook
    {
        std::vector<CVector> vectors; // 2^B2 unit-norm K-vectors
        CodebookKind kind = CodebookKind::Rvq;
        std::optional<CMatrix> shaping; // correlation matrix R used for CorrBased
    };

    enum class CorrelationSource
    {
        Theoretical,
        Empirical
    };

    struct CorrelationMatrix
    {
        CMatrix R;
        CorrelationSource source = CorrelationSource::Theoretical;
    };

    // Asymptotic correlation E[g_k g_k^H] of user k (0-based): diagonal, with
    //   sub:  r_kk = (pi/4) s + 1/N - (pi/4) s / N,          r_ii = 1/N
    //   full: r_kk = (pi/(4K)) s + 1/(MK) - (pi/4) s / (MK),  r_ii = 1/(MK)
    // where s = sinc^2(pi / 2^B1) (s = 1 for ideal phases).
    CorrelationMatrix theoretical_correlation(const SystemConfig &cfg, std::size_t user);

    // Sample mean of g g^H over the given effective-channel vectors.
    CorrelationMatrix empirical_correlation(std::span<const CVector> samples);

    // 2^bits isotropic unit vectors. Draw order: vector by vector, K complex normals each.
    Codebook rvq_codebook(std::size_t dim, int bits, Rng &rng);

    // c_i = R^{1/2} v_i / ||R^{1/2} v_i|| with v_i drawn exactly as rvq_codebook() draws them,
    // so R = I reproduces the RVQ codebook of the same stream bit for bit.
    Codebook corr_codebook(const CorrelationMatrix &R, int bits, Rng &rng);

    struct CodewordChoice
    {
        std::size_t index = 0;
        CVector codeword;
    };

    // argmax_i |g^H c_i|, ties toward the smaller index. Throws ZeroVector if ||g|| < 1e-14.
    CodewordChoice select_codeword(std::span<const cdouble> g, const Codebook &cb);

    // 1 - |g~^H c|^2 with g~ = g / ||g||, clamped into [0, 1].
    double distortion(std::span<const cdouble> g, std::span<const cdouble> c);
}

#endif
