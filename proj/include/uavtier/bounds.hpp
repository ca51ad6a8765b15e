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

#ifndef UAVTIER_BOUNDS_HPP
#define UAVTIER_BOUNDS_HPP

#include "uavtier/channel.hpp"

// Closed forms for the ergodic capacity of a Rayleigh product channel. All
// of them depend on the spec only through min_dim() and product_dims(), so
// they are invariant under any permutation of the dims.

namespace uavtier {

/// Euler-Mascheroni constant, 20 significant digits.
inline constexpr long double kEulerGamma = 0.57721566490153286061L;

/// H_n = 1 + 1/2 + ... + 1/n (H_0 = 0), summed smallest term first.
long double harmonic_ext(int n);
double harmonic(int n);

/// psi(n) = -gamma + H_{n-1} for integer n >= 1.
long double digamma_int_ext(int n);
double digamma_int(int n);

/// g = (1/N0) sum_k sum_{l=1}^{N0} H_{N_k - l}, with N0 = min_dim() and the
/// outer sum over product_dims().
double g_factor(const ChannelSpec& spec);

/// E[ln det(H^H H)] = sum_k sum_{l=1}^{N0} psi(N_k - l + 1) = N0 (g - K gamma).
double expected_logdet(const ChannelSpec& spec);

/// N0 ln(1 + q exp(g - K gamma)); asymptotically tight as q grows.
double lower_bound(const ChannelSpec& spec, SnrValue q);

/// N0 ln(1 + q prod_k N_k) from exchanging expectation and ln det.
double upper_bound(const ChannelSpec& spec, SnrValue q);

struct GapFloor {
    double tight = 0.0;   ///< sum_k sum_l 1/(2 (N_k - l + 1))
    double loose = 0.0;   ///< N0 sum_k 1/(2 N_k)
};

/// Asymptotic lower limits on upper_bound - lower_bound.
GapFloor gap_floor(const ChannelSpec& spec);

/// N0 ln q + E[ln det(H^H H)], the high-SNR capacity.
double high_snr_capacity(const ChannelSpec& spec, SnrValue q);

/// High-SNR gain from adding one antenna to dims[tier], 1 <= tier <= K:
/// sum_{l=1}^{N0} 1/(N_k + 1 - l). Throws ValidationError when dims[tier] is
/// the unique minimum, since the increment then changes N0.
double increment_one_antenna(const ChannelSpec& spec, int tier);

/// High-SNR capacity over the all-square spec with the same N0 and K.
double rect_vs_square_delta(const ChannelSpec& spec);

struct BoundsReport {
    double lower = 0.0;
    double upper = 0.0;
    double g = 0.0;
    GapFloor gap_floor;
    ChannelSpec spec;   ///< min_dim() first, then product_dims()
    SnrValue q;
};

BoundsReport bounds_report(const ChannelSpec& spec, SnrValue q);

/// ln(1 + exp(x)) without overflow.
double log1p_exp(double x);

} // namespace uavtier

#endif // UAVTIER_BOUNDS_HPP
