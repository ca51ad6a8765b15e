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

// Acceptance suite: one [PASS]/[FAIL] line per criterion, exit 1 if any fail.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "uavtier/bounds.hpp"
#include "uavtier/cli.hpp"
#include "uavtier/montecarlo.hpp"
#include "uavtier/optimizer.hpp"

using namespace uavtier;

namespace {

using Clock = std::chrono::steady_clock;
using Parts = std::vector<int>;

// Closed forms evaluated at 40 digits and frozen.
constexpr double kOneMinusTwoGamma = -0.15443132980306572;
constexpr double kPsiSum234 = 3.5244706737272019;

int failures = 0;

void report(int id, bool ok, const std::string& what)
{
    (ok ? std::cout : std::cerr) << (ok ? "[PASS] " : "[FAIL] ") << id << ' ' << what << std::endl;
    if (!ok)
        ++failures;
}

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 4)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

std::string parts_str(const Parts& p)
{
    return PartitionCandidate(p, Provenance::full).to_string();
}

void criterion_1()
{
    const std::array<int, 8> n0s{2, 4, 6, 8, 10, 12, 14, 16};
    const std::array<int, 8> nks{8, 16, 32, 48, 64, 96, 128, 256};
    // Rows n0, columns nk.
    const int expected[8][8] = {
        {11, 11, 11, 11, 11, 11, 11, 11},
        {6, 6, 6, 6, 6, 6, 6, 6},
        {4, 4, 4, 4, 4, 4, 4, 4},
        {3, 3, 3, 3, 3, 3, 3, 3},
        {3, 3, 3, 3, 3, 3, 3, 3},
        {3, 2, 2, 2, 2, 2, 2, 2},
        {3, 2, 2, 2, 2, 2, 2, 2},
        {3, 2, 2, 2, 2, 2, 2, 2},
    };
    const auto t0 = Clock::now();
    int matches = 0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            matches += optimal_tier_count(20, n0s[i], nks[j]) == expected[i][j];
    const double t = seconds_since(t0);
    report(1, matches == 64 && t < 1.0,
           "tier-count table M=20: " + std::to_string(matches) + "/64 entries, " + fmt(t, 6) + " s");
}

void criterion_2()
{
    const bool ok = count_partitions(10) == 42 && count_partitions(16) == 231 &&
                    enumerate_partitions(10).size() == 42 && enumerate_partitions(16).size() == 231;
    report(2, ok,
           "partition counts p(10)=" + std::to_string(count_partitions(10)) +
               " p(16)=" + std::to_string(count_partitions(16)) + ", enumeration lengths " +
               std::to_string(enumerate_partitions(10).size()) + "/" + std::to_string(enumerate_partitions(16).size()));
}

void criterion_3()
{
    const auto t0 = Clock::now();
    const LogDetMoment m = mc_logdet_moment(ChannelSpec({2, 2}), 100000, 42);
    const double t = seconds_since(t0);
    const double z = (m.estimate.mean - kOneMinusTwoGamma) / m.estimate.std_error;
    report(3, std::abs(z) <= 3.0 && t < 5.0,
           "Wishart moment (2,2): " + fmt(m.estimate.mean) + " vs " + fmt(kOneMinusTwoGamma) + ", z=" + fmt(z, 2) +
               ", " + fmt(t, 2) + " s");
}

void criterion_4()
{
    const LogDetMoment m = mc_logdet_moment(ChannelSpec({2, 3, 4}), 100000, 42);
    const double z = (m.estimate.mean - kPsiSum234) / m.estimate.std_error;
    report(4, std::abs(z) <= 3.0,
           "product moment (2,3,4): " + fmt(m.estimate.mean) + " vs " + fmt(kPsiSum234) + ", z=" + fmt(z, 2));
}

void criterion_5()
{
    const SnrValue q = SnrValue::from_linear(10.0);
    const auto a = mc_ergodic_capacity(ChannelSpec({2, 3, 4}), q, 100000, 42);
    const auto b = mc_ergodic_capacity(ChannelSpec({4, 2, 3}), q, 100000, 43);
    const double se = std::hypot(a.std_error, b.std_error);
    const double z = (a.mean - b.mean) / se;
    report(5, std::abs(z) <= 3.0,
           "permutation invariance q=10: " + fmt(a.mean) + " vs " + fmt(b.mean) + ", z=" + fmt(z, 2));
}

void criterion_6()
{
    const ChannelSpec s({4, 4, 4, 8});
    const auto t0 = Clock::now();
    bool sandwich = true;
    double gap_first = 0.0;
    double gap_last = 0.0;
    for (double q : {1.0, 10.0, 100.0, 1e3, 1e4}) {
        const SnrValue snr = SnrValue::from_linear(q);
        const auto e = mc_ergodic_capacity(s, snr, 20000, 42);
        const double lo = lower_bound(s, snr);
        const double up = upper_bound(s, snr);
        sandwich = sandwich && lo <= e.mean + 3 * e.std_error && e.mean <= up + 3 * e.std_error;
        const double gap = e.mean - lo;
        if (q == 1.0)
            gap_first = gap;
        gap_last = gap;
    }
    const double t = seconds_since(t0);
    report(6, sandwich && gap_last < gap_first && t < 60.0,
           "bound sandwich (4,4,4,8): " + std::string(sandwich ? "holds" : "violated") + ", gap q=1 " +
               fmt(gap_first) + " -> q=1e4 " + fmt(gap_last) + ", " + fmt(t, 2) + " s");
}

void criterion_7()
{
    const SnrValue q = SnrValue::from_linear(1e4);
    const auto base = mc_ergodic_capacity(ChannelSpec({3, 4, 4, 4, 8}), q, 100000, 42);
    const auto one = mc_ergodic_capacity(ChannelSpec({3, 4, 5, 4, 8}), q, 100000, 43);
    const auto three = mc_ergodic_capacity(ChannelSpec({3, 4, 5, 6, 8}), q, 100000, 44);
    const double d1 = one.mean - base.mean;
    const double d3 = three.mean - base.mean;
    const double s1 = 3 * std::hypot(one.std_error, base.std_error);
    const double s3 = 3 * std::hypot(three.std_error, base.std_error);
    const bool ok = std::abs(d1 - 1.08) <= 0.1 && std::abs(d3 - 2.95) <= 0.15;
    report(7, ok,
           "one-antenna increments q=1e4: " + fmt(d1) + " (+-" + fmt(s1) + ") vs 1.08+-0.1, " + fmt(d3) + " (+-" +
               fmt(s3) + ") vs 2.95+-0.15");
}

void criterion_8()
{
    const ChannelSpec s({2, 2, 2});
    const SnrValue q = SnrValue::from_linear(1e6);
    const double gap = upper_bound(s, q) - lower_bound(s, q);
    const double floor = gap_floor(s).tight;
    report(8, gap > 1.5 - 1e-6 && std::abs(floor - 1.5) < 1e-12,
           "gap floor (2,2,2) q=1e6: upper-lower " + fmt(gap) + " > tight floor " + fmt(floor));
}

void criterion_9()
{
    const auto t0 = Clock::now();
    const OptimizeOptions opts{Method::mc, Search::full, 20000, 42, 0};
    struct Case {
        double p_db;
        Parts expected;
    };
    const std::vector<Case> cases{{-15.0, {8}}, {15.0, {4, 4}}, {20.0, Parts(8, 1)}};
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        const auto r = optimize(8, 4, 8, PowerModel::from_db(c.p_db, 3.0, 1.0), opts);
        const Parts& best = r.best().candidate.parts;
        ok = ok && best == c.expected;
        detail += " p=" + fmt(c.p_db, 0) + "dB best " + parts_str(best);
        if (best != c.expected) {
            const auto it = std::find_if(r.ranked.begin(), r.ranked.end(),
                                         [&](const RankedCandidate& rc) { return rc.candidate.parts == c.expected; });
            detail += " (want " + parts_str(c.expected) + ", ranked " + std::to_string(it - r.ranked.begin() + 1) +
                      " at " + fmt(r.best().objective - it->objective, 3) + " nats below)";
        }
        detail += ";";
    }
    const double t = seconds_since(t0);
    report(9, ok && t < 300.0, "regime transitions M=8 n0=4 nk=8:" + detail + " " + fmt(t, 1) + " s");
}

void criterion_10()
{
    const PowerModel pm = PowerModel::from_db(20.0, 2.0, 1.0);
    int misses = 0;
    std::string first;
    for (int n = 1; n <= 64; ++n) {
        const auto [n0, nk] = grid_cell(n, 8);
        const Parts best = optimize(10, n0, nk, pm, {Method::lower, Search::full}).best().candidate.parts;
        std::set<Parts> allowed;
        for (const auto& c : reduced_candidates(10, n0, nk))
            allowed.insert(c.parts);
        for (const auto& c : asymptotic_candidates(10))
            allowed.insert(c.parts);
        if (!allowed.count(best)) {
            if (misses == 0)
                first = " first miss N=" + std::to_string(n) + " (n0=" + std::to_string(n0) + ", nk=" +
                        std::to_string(nk) + ") argmax " + parts_str(best);
            ++misses;
        }
    }
    report(10, misses == 0,
           "reduced-search sufficiency M=10 p=20dB: " + std::to_string(misses) + "/64 discrepancies;" + first);
}

void criterion_11()
{
    const std::vector<std::string> base{"optimize", "--m", "8", "--n0", "4", "--nk", "8", "--p-db", "15",
                                        "--alpha", "3", "--method", "mc", "--search", "full", "--samples",
                                        "2000", "--seed", "42"};
    auto run_with = [&](unsigned threads) {
        auto args = base;
        args.push_back("--threads");
        args.push_back(std::to_string(threads));
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return std::pair{code, out.str()};
    };
    const unsigned n = std::max(4u, std::thread::hardware_concurrency());
    const auto a = run_with(1);
    const auto b = run_with(1);
    const auto c = run_with(n);
    const bool ok = a.first == 0 && b.first == 0 && c.first == 0 && a.second == b.second && a.second == c.second;
    report(11, ok,
           "determinism: optimize JSON byte-identical across repeats and 1 vs " + std::to_string(n) + " threads (" +
               std::to_string(a.second.size()) + " bytes)");
}

} // namespace

int main()
{
    const std::vector<std::function<void()>> criteria{criterion_1, criterion_2, criterion_3, criterion_4,
                                                      criterion_5, criterion_6, criterion_7, criterion_8,
                                                      criterion_9, criterion_10, criterion_11};
    for (const auto& c : criteria) {
        try {
            c();
        } catch (const std::exception& e) {
            report(static_cast<int>(&c - criteria.data()) + 1, false, std::string("threw: ") + e.what());
        }
    }
    std::cout << (criteria.size() - failures) << '/' << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
