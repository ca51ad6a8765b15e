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

#include "uavtier/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

namespace uavtier {

unsigned resolve_threads(unsigned requested)
{
    if (requested > 0)
        return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> evaluate_indexed(std::uint64_t count, unsigned threads,
                                     const std::function<double(std::uint64_t)>& fn)
{
    std::vector<double> values(count);
    const std::uint64_t workers = std::clamp<std::uint64_t>(resolve_threads(threads), 1, std::max<std::uint64_t>(count, 1));

    struct Failure {
        std::uint64_t index = UINT64_MAX;
        std::exception_ptr error;
    };
    std::vector<Failure> failures(workers);

    auto run = [&](std::uint64_t w) {
        const std::uint64_t begin = count * w / workers;
        const std::uint64_t end = count * (w + 1) / workers;
        for (std::uint64_t i = begin; i < end; ++i) {
            try {
                values[i] = fn(i);
            } catch (...) {
                failures[w] = {i, std::current_exception()};
                return;
            }
        }
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::uint64_t w = 0; w < workers; ++w)
            pool.emplace_back(run, w);
    }

    auto first = std::min_element(failures.begin(), failures.end(),
                                  [](const Failure& a, const Failure& b) { return a.index < b.index; });
    if (first->error)
        std::rethrow_exception(first->error);
    return values;
}

CapacityEstimate summarize(const std::vector<double>& values, std::uint64_t seed)
{
    CapacityEstimate est;
    est.samples = values.size();
    est.seed = seed;
    if (values.empty())
        return est;

    long double sum = 0.0L;
    for (double v : values)
        sum += v;
    const long double mean = sum / static_cast<long double>(values.size());

    long double ss = 0.0L;
    for (double v : values) {
        const long double d = v - mean;
        ss += d * d;
    }
    est.mean = static_cast<double>(mean);
    if (values.size() > 1) {
        const long double var = ss / static_cast<long double>(values.size() - 1);
        est.std_error = static_cast<double>(std::sqrt(var / static_cast<long double>(values.size())));
    }
    return est;
}

CapacityEstimate mc_ergodic_capacity(const ChannelSpec& spec, SnrValue q, std::uint64_t samples,
                                     std::uint64_t seed, unsigned threads)
{
    require(samples >= 2, "Monte-Carlo estimation needs at least 2 samples");
    if (!std::isfinite(q.linear()))
        throw NumericError("SNR overflows double precision");

    const int rank = spec.min_dim();
    auto draw = [&](std::uint64_t i) {
        auto gen = substream(seed, i);
        const double c = capacity_sample(sample_channel<double>(spec, gen), q, rank);
        if (!std::isfinite(c))
            throw NumericError("non-finite capacity sample at index " + std::to_string(i) + " for spec " +
                               spec.to_string());
        return c;
    };
    return summarize(evaluate_indexed(samples, threads, draw), seed);
}

LogDetMoment mc_logdet_moment(const ChannelSpec& spec, std::uint64_t samples, std::uint64_t seed,
                              unsigned threads)
{
    require(samples >= 2, "Monte-Carlo estimation needs at least 2 samples");

    const int rank = spec.min_dim();
    auto draw = [&](std::uint64_t i) {
        auto gen = substream(seed, i);
        return logdet_gram_sample(sample_channel<double>(spec, gen), rank);
    };
    const std::vector<double> all = evaluate_indexed(samples, threads, draw);

    std::vector<double> kept;
    kept.reserve(all.size());
    for (double v : all)
        if (std::isfinite(v))
            kept.push_back(v);

    LogDetMoment out;
    out.discarded = all.size() - kept.size();
    if (out.discarded * 1000 > samples)
        throw NumericError(std::to_string(out.discarded) + " of " + std::to_string(samples) +
                           " draws were numerically singular for spec " + spec.to_string());
    out.estimate = summarize(kept, seed);
    return out;
}

} // namespace uavtier
