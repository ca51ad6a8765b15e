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

#include "uavtier/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace uavtier {

long double harmonic_ext(int n)
{
    require(n >= 0, "harmonic number index must be >= 0");
    long double sum = 0.0L;
    for (int r = n; r >= 1; --r)
        sum += 1.0L / static_cast<long double>(r);
    return sum;
}

double harmonic(int n)
{
    return static_cast<double>(harmonic_ext(n));
}

long double digamma_int_ext(int n)
{
    require(n >= 1, "integer digamma needs n >= 1");
    return -kEulerGamma + harmonic_ext(n - 1);
}

double digamma_int(int n)
{
    return static_cast<double>(digamma_int_ext(n));
}

namespace {

// sum_k sum_{l=1}^{N0} H_{N_k - l}; terms with N_k < l cannot occur since
// N0 is the minimum.
long double harmonic_double_sum(const ChannelSpec& spec)
{
    const int n0 = spec.min_dim();
    long double sum = 0.0L;
    for (int nk : spec.product_dims())
        for (int l = 1; l <= n0; ++l)
            sum += harmonic_ext(nk - l);
    return sum;
}

} // namespace

double g_factor(const ChannelSpec& spec)
{
    return static_cast<double>(harmonic_double_sum(spec) / spec.min_dim());
}

double expected_logdet(const ChannelSpec& spec)
{
    const long double n0 = spec.min_dim();
    return static_cast<double>(harmonic_double_sum(spec) - spec.tiers() * n0 * kEulerGamma);
}

double log1p_exp(double x)
{
    if (x > 0.0)
        return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

double lower_bound(const ChannelSpec& spec, SnrValue q)
{
    const long double exponent = harmonic_double_sum(spec) / spec.min_dim() - spec.tiers() * kEulerGamma;
    return spec.min_dim() * log1p_exp(q.log() + static_cast<double>(exponent));
}

double upper_bound(const ChannelSpec& spec, SnrValue q)
{
    long double log_gain = 0.0L;
    for (int nk : spec.product_dims())
        log_gain += std::log(static_cast<long double>(nk));
    return spec.min_dim() * log1p_exp(q.log() + static_cast<double>(log_gain));
}

GapFloor gap_floor(const ChannelSpec& spec)
{
    const int n0 = spec.min_dim();
    long double tight = 0.0L;
    long double loose = 0.0L;
    for (int nk : spec.product_dims()) {
        for (int l = n0; l >= 1; --l)
            tight += 1.0L / (2.0L * (nk - l + 1));
        loose += 1.0L / (2.0L * nk);
    }
    return {static_cast<double>(tight), static_cast<double>(n0 * loose)};
}

double high_snr_capacity(const ChannelSpec& spec, SnrValue q)
{
    return spec.min_dim() * q.log() + expected_logdet(spec);
}

double increment_one_antenna(const ChannelSpec& spec, int tier)
{
    require(tier >= 1 && tier <= spec.tiers(), "tier index must lie in [1, K]");
    const auto dims = spec.dims();
    const int nk = dims[tier];
    const int n0 = spec.min_dim();
    if (nk == n0 && std::count(dims.begin(), dims.end(), n0) == 1)
        throw ValidationError("dims[" + std::to_string(tier) +
                              "] is the unique minimum; the increment changes N0, use a "
                              "high_snr_capacity difference instead");
    long double sum = 0.0L;
    for (int l = n0; l >= 1; --l)
        sum += 1.0L / (nk + 1 - l);
    return static_cast<double>(sum);
}

double rect_vs_square_delta(const ChannelSpec& spec)
{
    const int n0 = spec.min_dim();
    long double sum = 0.0L;
    for (int nk : spec.product_dims())
        for (int l = 1; l <= n0; ++l)
            for (int s = nk - 1; s >= n0; --s)
                sum += 1.0L / (s - l + 1);
    return static_cast<double>(sum);
}

BoundsReport bounds_report(const ChannelSpec& spec, SnrValue q)
{
    std::vector<int> view{spec.min_dim()};
    for (int nk : spec.product_dims())
        view.push_back(nk);
    return BoundsReport{lower_bound(spec, q), upper_bound(spec, q), g_factor(spec),
                        gap_floor(spec),      ChannelSpec(std::move(view)), q};
}

} // namespace uavtier
