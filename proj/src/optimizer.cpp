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

#include "uavtier/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "uavtier/bounds.hpp"
#include "uavtier/montecarlo.hpp"

namespace uavtier {

PowerModel PowerModel::from_db(double p_db, double alpha, double cp0)
{
    require(std::isfinite(p_db), "power in dB must be finite");
    PowerModel pm;
    pm.p = std::pow(10.0, p_db / 10.0);
    pm.p0 = cp0;
    pm.c = 1.0;
    pm.alpha = alpha;
    pm.validate();
    return pm;
}

void PowerModel::validate() const
{
    require(std::isfinite(p) && p > 0.0, "per-UAV power p must be finite and > 0");
    require(std::isfinite(p0) && p0 > 0.0, "user power p0 must be finite and > 0");
    require(std::isfinite(c) && c > 0.0, "attenuation constant c must be finite and > 0");
    require(alpha >= 1.5 && alpha <= 6.0, "path-loss exponent alpha must lie in [1.5, 6]");
}

std::vector<std::string> PowerModel::warnings() const
{
    std::vector<std::string> out;
    if (alpha < 2.0 || alpha > 4.0)
        out.push_back("path-loss exponent outside the typical range [2, 4]");
    return out;
}

std::string_view to_string(Method m)
{
    switch (m) {
    case Method::upper: return "upper";
    case Method::lower: return "lower";
    case Method::mc: return "mc";
    }
    return "unknown";
}

std::string_view to_string(Search s)
{
    switch (s) {
    case Search::full: return "full";
    case Search::reduced: return "reduced";
    case Search::direct: return "direct";
    case Search::combined: return "combined";
    }
    return "unknown";
}

Method parse_method(std::string_view s)
{
    if (s == "upper")
        return Method::upper;
    if (s == "lower")
        return Method::lower;
    if (s == "mc")
        return Method::mc;
    throw ValidationError("unknown method '" + std::string(s) + "' (expected upper, lower or mc)");
}

Search parse_search(std::string_view s)
{
    if (s == "full")
        return Search::full;
    if (s == "reduced")
        return Search::reduced;
    if (s == "direct")
        return Search::direct;
    if (s == "combined")
        return Search::combined;
    throw ValidationError("unknown search '" + std::string(s) + "' (expected full, reduced, direct or combined)");
}

std::vector<int> order_parts_for_power(const PartitionCandidate& candidate, int n0, int nk)
{
    require(n0 >= 1 && nk >= 1, "n0 and nk must be >= 1");
    std::vector<int> tiers{n0};
    std::vector<int> parts = candidate.parts;
    std::sort(parts.begin(), parts.end());
    tiers.insert(tiers.end(), parts.begin(), parts.end());
    tiers.push_back(nk);
    return tiers;
}

ChannelSpec assemble_spec(const PartitionCandidate& candidate, int n0, int nk)
{
    return ChannelSpec(order_parts_for_power(candidate, n0, nk));
}

SnrValue effective_snr(const PartitionCandidate& candidate, int n0, int nk, const PowerModel& pm)
{
    pm.validate();
    const std::vector<int> tiers = order_parts_for_power(candidate, n0, nk);
    const int k = static_cast<int>(tiers.size()) - 1;

    // (K-1) ln p~ = ln(c p0) + (K-1) ln p
    double log_q = pm.alpha * std::log(static_cast<double>(k)) + std::log(pm.c * pm.p0) + (k - 1) * std::log(pm.p);
    for (int i = 0; i <= k - 2; ++i)
        log_q -= std::log(static_cast<double>(tiers[i]));
    if (!std::isfinite(log_q))
        throw NumericError("effective SNR is not finite for " + candidate.to_string());
    return SnrValue::from_log(log_q);
}

double objective_upper(const PartitionCandidate& candidate, int n0, int nk, const PowerModel& pm)
{
    return upper_bound(assemble_spec(candidate, n0, nk), effective_snr(candidate, n0, nk, pm));
}

double objective_lower(const PartitionCandidate& candidate, int n0, int nk, const PowerModel& pm)
{
    return lower_bound(assemble_spec(candidate, n0, nk), effective_snr(candidate, n0, nk, pm));
}

CapacityEstimate objective_mc(const PartitionCandidate& candidate, int n0, int nk, const PowerModel& pm,
                              std::uint64_t samples, std::uint64_t seed, unsigned threads)
{
    require(samples >= 100, "Monte-Carlo objective needs at least 100 samples");
    return mc_ergodic_capacity(assemble_spec(candidate, n0, nk), effective_snr(candidate, n0, nk, pm), samples, seed,
                               threads);
}

std::vector<PartitionCandidate> candidate_set(int budget, int n0, int nk, Search search)
{
    require(budget >= 1 && n0 >= 1 && nk >= 1, "budget, n0 and nk must all be >= 1");
    switch (search) {
    case Search::full:
        return enumerate_partitions(budget);
    case Search::reduced:
        return reduced_candidates(budget, n0, nk);
    case Search::direct:
        return {direct_candidate(budget, n0, nk)};
    case Search::combined: {
        std::vector<PartitionCandidate> out = reduced_candidates(budget, n0, nk);
        for (auto& extra : asymptotic_candidates(budget)) {
            const bool seen = std::any_of(out.begin(), out.end(), [&](const auto& c) { return c.parts == extra.parts; });
            if (!seen)
                out.push_back(std::move(extra));
        }
        return out;
    }
    }
    throw ValidationError("unknown search mode");
}

namespace {

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

bool ranks_before(const RankedCandidate& a, const RankedCandidate& b)
{
    if (a.objective != b.objective)
        return a.objective > b.objective;
    if (a.tiers != b.tiers)
        return a.tiers < b.tiers;
    return a.candidate.parts < b.candidate.parts;
}

} // namespace

OptimizationResult optimize(int budget, int n0, int nk, const PowerModel& pm, const OptimizeOptions& options)
{
    pm.validate();
    if (options.method == Method::mc)
        require(options.samples >= 100, "Monte-Carlo objective needs at least 100 samples");

    OptimizationResult result;
    result.method = options.method;
    result.search = options.search;

    for (auto& candidate : candidate_set(budget, n0, nk, options.search)) {
        RankedCandidate rc;
        rc.tiers = candidate.tiers();
        rc.q = effective_snr(candidate, n0, nk, pm);
        switch (options.method) {
        case Method::upper:
            rc.objective = objective_upper(candidate, n0, nk, pm);
            break;
        case Method::lower:
            rc.objective = objective_lower(candidate, n0, nk, pm);
            break;
        case Method::mc:
            rc.estimate = objective_mc(candidate, n0, nk, pm, options.samples, options.seed, options.threads);
            rc.objective = rc.estimate->mean;
            break;
        }
        rc.candidate = std::move(candidate);
        result.ranked.push_back(std::move(rc));
    }

    std::sort(result.ranked.begin(), result.ranked.end(), ranks_before);

    for (std::size_t i = 1; i < result.ranked.size(); ++i) {
        const auto& a = result.ranked[i - 1];
        const auto& b = result.ranked[i];
        if (a.objective == b.objective) {
            const char* rule = a.tiers != b.tiers ? "fewer tiers" : "lexicographically smaller parts";
            result.tiebreak_trace.push_back("exact tie at " + format_number(a.objective) + ": " +
                                            a.candidate.to_string() + " before " + b.candidate.to_string() + " (" +
                                            rule + ")");
        } else if (a.estimate && b.estimate) {
            const double se = std::hypot(a.estimate->std_error, b.estimate->std_error);
            if (a.objective - b.objective <= 2.0 * se)
                result.tiebreak_trace.push_back("statistical tie within 2 stderr: " + a.candidate.to_string() + " (" +
                                                format_number(a.objective) + ") vs " + b.candidate.to_string() + " (" +
                                                format_number(b.objective) + "), combined stderr " +
                                                format_number(se));
        }
    }
    return result;
}

std::pair<int, int> grid_cell(int index, int cols)
{
    require(index >= 1 && cols >= 1, "grid index and column count must be >= 1");
    return {(index - 1) / cols + 1, (index - 1) % cols + 1};
}

std::vector<SweepRow> sweep_grid(int budget, const PowerModel& pm, const OptimizeOptions& options, int rows, int cols)
{
    require(rows >= 1 && cols >= 1, "grid dimensions must be >= 1");
    std::vector<SweepRow> out;
    out.reserve(static_cast<std::size_t>(rows) * cols);
    for (int n = 1; n <= rows * cols; ++n) {
        SweepRow row;
        row.index = n;
        std::tie(row.n0, row.nk) = grid_cell(n, cols);
        try {
            row.best = optimize(budget, row.n0, row.nk, pm, options).best();
        } catch (const std::exception& e) {
            row.error = e.what();
            row.failure = std::current_exception();
        }
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace uavtier
