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

#ifndef HYBRID_PRECODING_HPP
#define HYBRID_PRECODING_HPP

#include "hybrid/feedback.hpp"
#include "hybrid/linalg.hpp"
#include "hybrid/system_config.hpp"

#include <optional>

namespace hybrid
{
    // What the precoder was built from: the true effective channels (no bits) or quantized feedback.
    struct FeedbackBasis
    {
        FeedbackBits bits;
        std::optional<CodebookKind> kind;
    };

    // K x K digital precoder; every column satisfies ||f_hat w_k|| = 1.
    struct DigitalPrecoder
    {
        CMatrix W;
        FeedbackBasis basis;
    };

    // U = G_hat (G_hat^H G_hat)^-1, w_k = u_k / ||f_hat u_k||.
    // Throws SingularMatrix when the Gram solve is rejected; callers treat that trial as degenerate.
    DigitalPrecoder zf_precoder(const CMatrix &G_hat, const CMatrix &f_hat, FeedbackBasis basis = {});

    // w_k = g_hat_k / ||f_hat g_hat_k||. Throws ZeroVector if a fed-back channel vanishes.
    DigitalPrecoder mrt_precoder(const CMatrix &G_hat, const CMatrix &f_hat, FeedbackBasis basis = {});
}

#endif
