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

#ifndef HYBRID_ANALOG_HPP
#define HYBRID_ANALOG_HPP

#include "hybrid/channel.hpp"
#include "hybrid/linalg.hpp"
#include "hybrid/system_config.hpp"

namespace hybrid
{
    // Quantized analog network.
    //
    // f_hat holds the phase-shifter settings with unit-norm columns (entries 1/sqrt(N) on the
    // support of each column). a_hat is the physical network including divider/combiner
    // dissipation: a_hat = dissipation_scale * f_hat with dissipation_scale = 1/sqrt(N) for the
    // sub-connected structure and 1/sqrt(M K) for the fully-connected one. Hence |a_hat| entries
    // are 1/N (sub, block-diagonal support) and 1/(M sqrt(K)) (full, dense).
    struct AnalogPrecoder
    {
        CMatrix a_hat;
        CMatrix f_hat;
        Structure structure = Structure::Sub;
        AnalogBits analog_bits;
        double dissipation_scale = 1.0;
    };

    // Nearest codebook angle 2 pi n / 2^bits to theta (mod 2 pi), ties toward the smaller n.
    // Returns the angle in [0, 2 pi).
    double quantize_phase(double theta, int bits);

    // Index n of the codebook angle chosen by quantize_phase().
    std::size_t quantize_phase_index(double theta, int bits);

    // Phase of each entry compensates arg(h_{j,k}) as closely as the B1-bit codebook allows.
    // Zero channel entries get phase 0. Ideal analog bits use the exact phase.
    AnalogPrecoder analog_precoder(const ChannelMatrix &channel, const SystemConfig &cfg);
}

#endif
