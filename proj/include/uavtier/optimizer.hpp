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

#ifndef UAVTIER_OPTIMIZER_HPP
#define UAVTIER_OPTIMIZER_HPP

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavtier/channel.hpp"
#include "uavtier/partitions.hpp"

namespace uavtier {

// Transmit powers are linear. c absorbs the user-to-BTS distance.
struct PowerModel {
    double p = 1.0;       ///< per UAV antenna
    double p0 = 1.0;      ///< per user
    double c = 1.0;       ///< end-to-end attenuation constant
    double alpha = 2.0;   ///< path-loss exponent

    /// p given in dB; the product c * p0 is what enters the model.
    static PowerModel from_db(double p_db, double alpha, double cp0 = 1.0);

    /// Throws ValidationError on non-positive powers or alpha outside [1.5, 6].
    void validate() const;

    /// Non-fatal remarks, e.g. alpha outside the usual [2, 4].
    std::vector<std::string> warnings() const;
};

enum class Method { upper, lower, mc };
enum class Search { full, reduced, direct, combined };

std::string_view to_string(Method m);
std::string_view to_string(Search s);
Method parse_method(std::string_view s);
Search parse_search(std::string_view s);

/// Physical tier order (n0, parts..., nk) with parts non-decreasing, so the
/// largest relay tier sits last and drops out of the SNR denominator.
std::vector<int> order_parts_for_power(const PartitionCandidate& candidate, int n0, int nk);

ChannelSpec assemble_spec(const PartitionCandidate& candidate, int n0, int nk);

/// q = K^alpha p~^(K-1) / prod_{k=0}^{K-2} N_k with p~ = (c p0)^(1/(K-1)) p,
/// evaluated in the log domain.
SnrValue effective_snr(const PartitionCandidate& candidate, int n0, int nk, const PowerModel& pm);

/// upper_bound() of the assembled spec at its effective SNR.
double objective_upper(const PartitionCandidate& candidate, int n0, int nk, const PowerModel& pm);

/// lower_bound() of the assembled spec at its effective SNR.
double objective_lower(const PartitionCandidate& candidate, int n0, int nk, const PowerModel& pm);

/// Monte-Carlo ergodic capacity of the assembled spec; every candidate reuses
/// the same (seed, samples).
CapacityEstimate objective_mc(const PartitionCandidate& candidate, int n0, int nk, const PowerModel& pm,
                              std::uint64_t samples, std::uint64_t seed, unsigned threads = 0);

struct OptimizeOptions {
    Method method = Method::lower;
    Search search = Search::combined;
    std::uint64_t samples = 20000;
    std::uint64_t seed = 42;
    unsigned threads = 0;
};

struct RankedCandidate {
    PartitionCandidate candidate;
    int tiers = 0;
    SnrValue q = SnrValue::from_linear(1.0);
    double objective = 0.0;
    std::optional<CapacityEstimate> estimate;
};

struct OptimizationResult {
    std::vector<RankedCandidate> ranked;   ///< objective descending
    Method method = Method::lower;
    Search search = Search::combined;
    std::vector<std::string> tiebreak_trace;

    const RankedCandidate& best() const { return ranked.front(); }
};

/// Candidate set for a search mode: full enumeration, reduced set, the direct
/// candidate, or reduced plus both asymptotic allocations.
std::vector<PartitionCandidate> candidate_set(int budget, int n0, int nk, Search search);

/// Scores candidate_set() and ranks it. Equal objectives go to the smaller K,
/// then the lexicographically smaller parts. With the mc method, neighbours
/// within 2 combined standard errors are reported in tiebreak_trace.
OptimizationResult optimize(int budget, int n0, int nk, const PowerModel& pm, const OptimizeOptions& options = {});

struct SweepRow {
    int index = 0;   ///< 1-based combination index
    int n0 = 0;
    int nk = 0;
    std::optional<RankedCandidate> best;
    std::string error;
    std::exception_ptr failure;   ///< set together with error
};

/// Combination index N -> (n0, nk) = (floor((N-1)/cols) + 1, (N-1) mod cols + 1).
std::pair<int, int> grid_cell(int index, int cols);

/// Runs optimize() over every grid cell. A failing cell records its error and
/// the sweep carries on.
std::vector<SweepRow> sweep_grid(int budget, const PowerModel& pm, const OptimizeOptions& options, int rows = 8,
                                 int cols = 8);

} // namespace uavtier

#endif // UAVTIER_OPTIMIZER_HPP
