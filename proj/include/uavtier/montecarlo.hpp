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

#ifndef UAVTIER_MONTECARLO_HPP
#define UAVTIER_MONTECARLO_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "uavtier/channel.hpp"

namespace uavtier {

/// Resolves a requested worker count; 0 means hardware concurrency.
unsigned resolve_threads(unsigned requested);

/// Evaluates fn(i) for i in [0, count) on up to `threads` workers and returns
/// the values in index order. If any call throws, the exception from the
/// smallest failing index is rethrown after all workers have joined.
std::vector<double> evaluate_indexed(std::uint64_t count, unsigned threads,
                                     const std::function<double(std::uint64_t)>& fn);

/// Mean and standard error of `values`, summed in index order.
CapacityEstimate summarize(const std::vector<double>& values, std::uint64_t seed);

/// Ergodic capacity E[ln det(I + q H^H H)] by Monte Carlo. Draw i uses
/// substream(seed, i); the result is bit-identical for any thread count.
CapacityEstimate mc_ergodic_capacity(const ChannelSpec& spec, SnrValue q, std::uint64_t samples,
                                     std::uint64_t seed, unsigned threads = 0);

struct LogDetMoment {
    CapacityEstimate estimate;     ///< over retained draws only
    std::uint64_t discarded = 0;   ///< numerically singular draws
};

/// E[ln det(H^H H)] over the min_dim() nonzero Gram eigenvalues. Throws
/// NumericError when more than 0.1% of the draws are singular.
LogDetMoment mc_logdet_moment(const ChannelSpec& spec, std::uint64_t samples, std::uint64_t seed,
                              unsigned threads = 0);

} // namespace uavtier

#endif // UAVTIER_MONTECARLO_HPP
