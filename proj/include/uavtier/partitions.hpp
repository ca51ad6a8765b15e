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

#ifndef UAVTIER_PARTITIONS_HPP
#define UAVTIER_PARTITIONS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uavtier/errors.hpp"

namespace uavtier {

/// Largest budget enumerate_partitions() accepts (p(60) = 966467).
inline constexpr int kMaxEnumerableBudget = 60;

enum class Provenance { full, reduced, direct, asym_low_snr, asym_high_snr };

std::string_view to_string(Provenance p);

/// UAVs per relay tier, tiers 1..K-1. Parts are kept non-decreasing.
struct PartitionCandidate {
    std::vector<int> parts;
    int budget = 0;
    Provenance provenance = Provenance::full;

    PartitionCandidate() = default;
    PartitionCandidate(std::vector<int> parts, Provenance provenance);

    /// K: relay tiers plus the final hop to the base station.
    int tiers() const { return static_cast<int>(parts.size()) + 1; }
    std::string to_string() const;
};

/// Streams the partitions of `budget` as non-decreasing part lists: most parts
/// first, lexicographic within equal part counts.
class PartitionStream {
public:
    explicit PartitionStream(int budget);
    std::optional<std::vector<int>> next();

private:
    bool advance();
    void reset_for_length(int length);

    int budget_;
    int length_;
    std::vector<int> current_;
};

/// All partitions of `budget` in PartitionStream order. BudgetError above
/// kMaxEnumerableBudget.
std::vector<PartitionCandidate> enumerate_partitions(int budget);

/// p(n) by Euler's pentagonal-number recurrence. BudgetError if p(n) does not
/// fit in 64 bits.
std::uint64_t count_partitions(int n);

/// Hardy-Ramanujan asymptotic exp(pi sqrt(2n/3)) / (4 sqrt(3) n).
double hardy_ramanujan_estimate(int n);

/// 1-based position of `parts` among the partitions of their sum when every
/// partition is written largest part first and the lists are sorted
/// lexicographically. For a budget of 10 this is the numbering of the
/// published partition table (all ones = 1, {10} = 42).
std::uint64_t catalog_index(std::span<const int> parts);

struct TierPlan {
    int base = 0;        ///< min(n0, nk)
    int tiers = 0;       ///< K
    int remainder = 0;   ///< M - (K - 1) base; negative when base > M
};

/// K = max(1 + floor(M / min(n0, nk)), 2) and the matching remainder.
TierPlan tier_plan(int budget, int n0, int nk);
int optimal_tier_count(int budget, int n0, int nk);

/// Base-filled tiers with each partition of the remainder spread over the last
/// tiers; sorted lexicographically, duplicates removed.
std::vector<PartitionCandidate> reduced_candidates(int budget, int n0, int nk);

/// K - 2 tiers of the base and one tier absorbing the whole remainder.
PartitionCandidate direct_candidate(int budget, int n0, int nk);

/// All-ones (high-SNR limit) and the single tier {M} (low-SNR limit); a single
/// candidate when M = 1.
std::vector<PartitionCandidate> asymptotic_candidates(int budget);

} // namespace uavtier

#endif // UAVTIER_PARTITIONS_HPP
