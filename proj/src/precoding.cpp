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

#include "hybrid/precoding.hpp"
#include "hybrid/errors.hpp"

namespace hybrid
{
    namespace
    {
        void check_shapes(const CMatrix &G_hat, const CMatrix &f_hat)
        {
            if (G_hat.rows() != G_hat.cols() || G_hat.rows() == 0)
                throw DimensionMismatch("precoder: fed-back channel matrix must be K x K");
            if (f_hat.cols() != G_hat.cols())
                throw DimensionMismatch("precoder: phase matrix must have K columns");
        }

        // Scales column k of U by 1 / ||f_hat u_k||.
        CMatrix normalize_columns(CMatrix U, const CMatrix &f_hat)
        {
            for (std::size_t k = 0; k < U.cols(); ++k)
            {
                const CVector u = U.col(k);
                const double n = norm(f_hat * u);
                if (n < 1e-300)
                    throw ZeroVector("precoder: column maps to zero through the phase network");
                for (std::size_t i = 0; i < U.rows(); ++i)
                    U(i, k) /= n;
            }
            return U;
        }
    }

    DigitalPrecoder zf_precoder(const CMatrix &G_hat, const CMatrix &f_hat, FeedbackBasis basis)
    {
        check_shapes(G_hat, f_hat);
        const CMatrix U = G_hat * gram_inverse(G_hat);
        return {normalize_columns(U, f_hat), basis};
    }

    DigitalPrecoder mrt_precoder(const CMatrix &G_hat, const CMatrix &f_hat, FeedbackBasis basis)
    {
        check_shapes(G_hat, f_hat);
        for (std::size_t k = 0; k < G_hat.cols(); ++k)
            if (norm(G_hat.col(k)) < 1e-14)
                throw ZeroVector("mrt_precoder: fed-back channel " + std::to_string(k) + " is zero");
        return {normalize_columns(G_hat, f_hat), basis};
    }
}
