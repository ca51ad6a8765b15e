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

#include "uavtier/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "uavtier/errors.hpp"

namespace uavtier {

std::string_view to_string(Provenance p)
{
    switch (p) {
    case Provenance::full: return "full";
    case Provenance::reduced: return "reduced";
    case Provenance::direct: return "direct";
    case Provenance::asym_low_snr: return "asym_low_snr";
    case Provenance::asym_high_snr: return "asym_high_snr";
    }
    return "unknown";
}

PartitionCandidate::PartitionCandidate(std::vector<int> p, Provenance prov)
    : parts(std::move(p)), provenance(prov)
{
    require(!parts.empty(), "a partition needs at least one part");
    for (int v : parts)
        require(v >= 1, "partition parts must be >= 1");
    std::sort(parts.begin(), parts.end());
    budget = std::accumulate(parts.begin(), parts.end(), 0);
}

std::string PartitionCandidate::to_string() const
{
    std::string s = "{";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(parts[i]);
    }
    return s + '}';
}

PartitionStream::PartitionStream(int budget) : budget_(budget), length_(budget)
{
    require(budget >= 1, "partition budget must be >= 1");
    reset_for_length(length_);
}

void PartitionStream::reset_for_length(int length)
{
    current_.assign(static_cast<std::size_t>(length), 1);
    current_.back() = budget_ - (length - 1);
}

std::optional<std::vector<int>> PartitionStream::next()
{
    if (length_ == 0)
        return std::nullopt;
    std::vector<int> out = current_;
    if (!advance()) {
        --length_;
        if (length_ > 0)
            reset_for_length(length_);
    }
    return out;
}

// Lexicographic successor among non-decreasing lists of the current length:
// bump the rightmost position that can grow, fill the tail with the same value
// and put the rest in the last slot.
bool PartitionStream::advance()
{
    const int t = length_;
    for (int i = t - 2; i >= 0; --i) {
        const int v = current_[i] + 1;
        int prefix = 0;
        for (int j = 0; j < i; ++j)
            prefix += current_[j];
        if (prefix + v * (t - i) <= budget_) {
            for (int j = i; j < t - 1; ++j)
                current_[j] = v;
            current_[t - 1] = budget_ - prefix - v * (t - 1 - i);
            return true;
        }
    }
    return false;
}

std::vector<PartitionCandidate> enumerate_partitions(int budget)
{
    require(budget >= 1, "partition budget must be >= 1");
    if (budget > kMaxEnumerableBudget)
        throw BudgetError("enumerating partitions of " + std::to_string(budget) + " exceeds the limit of " +
                          std::to_string(kMaxEnumerableBudget));
    std::vector<PartitionCandidate> out;
    out.reserve(count_partitions(budget));
    PartitionStream stream(budget);
    while (auto p = stream.next())
        out.emplace_back(std::move(*p), Provenance::full);
    return out;
}

std::uint64_t count_partitions(int n)
{
    require(n >= 0, "partition count needs n >= 0");
    std::vector<__int128> p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = 1;
    const __int128 limit = static_cast<__int128>(UINT64_MAX);
    for (int m = 1; m <= n; ++m) {
        __int128 acc = 0;
        for (int k = 1;; ++k) {
            const int g1 = k * (3 * k - 1) / 2;
            if (g1 > m)
                break;
            const int sign = (k % 2 == 1) ? 1 : -1;
            acc += sign * p[m - g1];
            const int g2 = k * (3 * k + 1) / 2;
            if (g2 <= m)
                acc += sign * p[m - g2];
        }
        if (acc > limit)
            throw BudgetError("p(" + std::to_string(m) + ") exceeds 64 bits");
        p[m] = acc;
    }
    return static_cast<std::uint64_t>(p[n]);
}

double hardy_ramanujan_estimate(int n)
{
    require(n >= 1, "Hardy-Ramanujan estimate needs n >= 1");
    const double m = n;
    return std::exp(std::numbers::pi * std::sqrt(2.0 * m / 3.0)) / (4.0 * std::sqrt(3.0) * m);
}

std::uint64_t catalog_index(std::span<const int> parts)
{
    require(!parts.empty(), "a partition needs at least one part");
    std::vector<int> desc(parts.begin(), parts.end());
    for (int v : desc)
        require(v >= 1, "partition parts must be >= 1");
    std::sort(desc.begin(), desc.end(), std::greater<>());
    const int total = std::accumulate(desc.begin(), desc.end(), 0);
    require(total <= 400, "catalog_index supports sums up to 400");

    // bounded[n][m]: partitions of n with every part <= m.
    const auto width = static_cast<std::size_t>(total) + 1;
    std::vector<std::uint64_t> bounded(width * width, 0);
    auto at = [&](int nn, int mm) -> std::uint64_t& { return bounded[nn * width + mm]; };
    for (int m = 0; m <= total; ++m)
        at(0, m) = 1;
    for (int nn = 1; nn <= total; ++nn)
        for (int m = 1; m <= total; ++m)
            at(nn, m) = at(nn, m - 1) + (m <= nn ? at(nn - m, m) : 0);

    // Lists that agree on a prefix and then carry a smaller part come first.
    std::uint64_t index = 1;
    int remaining = total;
    for (int v : desc) {
        index += at(remaining, v - 1);
        remaining -= v;
    }
    return index;
}

TierPlan tier_plan(int budget, int n0, int nk)
{
    require(budget >= 1 && n0 >= 1 && nk >= 1, "budget, n0 and nk must all be >= 1");
    TierPlan plan;
    plan.base = std::min(n0, nk);
    plan.tiers = std::max(1 + budget / plan.base, 2);
    plan.remainder = budget - (plan.tiers - 1) * plan.base;
    return plan;
}

int optimal_tier_count(int budget, int n0, int nk)
{
    return tier_plan(budget, n0, nk).tiers;
}

std::vector<PartitionCandidate> reduced_candidates(int budget, int n0, int nk)
{
    const TierPlan plan = tier_plan(budget, n0, nk);
    if (plan.tiers == 2)
        return {PartitionCandidate({budget}, Provenance::reduced)};
    const int relays = plan.tiers - 1;
    if (plan.remainder == 0)
        return {PartitionCandidate(std::vector<int>(relays, plan.base), Provenance::reduced)};

    std::vector<PartitionCandidate> out;
    PartitionStream stream(plan.remainder);
    while (auto r = stream.next()) {
        const int t = static_cast<int>(r->size());
        if (t > relays)
            continue;
        std::vector<int> parts(static_cast<std::size_t>(relays - t), plan.base);
        for (int extra : *r)
            parts.push_back(plan.base + extra);
        out.emplace_back(std::move(parts), Provenance::reduced);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.parts < b.parts; });
    out.erase(std::unique(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.parts == b.parts; }),
              out.end());
    return out;
}

PartitionCandidate direct_candidate(int budget, int n0, int nk)
{
    const TierPlan plan = tier_plan(budget, n0, nk);
    if (plan.tiers == 2)
        return PartitionCandidate({budget}, Provenance::direct);
    std::vector<int> parts(static_cast<std::size_t>(plan.tiers - 2), plan.base);
    parts.push_back(plan.base + plan.remainder);
    return PartitionCandidate(std::move(parts), Provenance::direct);
}

std::vector<PartitionCandidate> asymptotic_candidates(int budget)
{
    require(budget >= 1, "partition budget must be >= 1");
    std::vector<PartitionCandidate> out;
    out.emplace_back(std::vector<int>(static_cast<std::size_t>(budget), 1), Provenance::asym_high_snr);
    if (budget > 1)
        out.emplace_back(std::vector<int>{budget}, Provenance::asym_low_snr);
    return out;
}

} // namespace uavtier
