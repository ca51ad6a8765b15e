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

#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "uavtier/cli.hpp"

using nlohmann::json;
using uavtier::cli::run;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

json call_json(std::vector<std::string> args)
{
    const Outcome o = call(std::move(args));
    REQUIRE(o.code == 0);
    return json::parse(o.out);
}

} // namespace

TEST_CASE("csv_field quoting")
{
    using uavtier::cli::csv_field;
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    CHECK(csv_field("") == "");
}

TEST_CASE("capacity report")
{
    const json j = call_json({"capacity", "--dims", "4,4,4,8", "--q-db", "30", "--samples", "4000"});
    CHECK(j["schema_version"] == "1.0");
    CHECK(j["command"] == "capacity");
    CHECK(j["config"]["seed"] == 42);
    CHECK(j["config"]["samples"] == 4000);
    const auto& r = j["result"];
    const double mean = r["mc_mean"];
    const double se = r["mc_stderr"];
    CHECK(r["lower"].get<double>() <= mean + 3 * se);
    CHECK(mean <= r["upper"].get<double>() + 3 * se);
    CHECK(r.contains("g"));
    CHECK(r["gap_floor"].contains("tight"));
    CHECK(r["gap_floor"].contains("loose"));
}

TEST_CASE("capacity near zero SNR")
{
    const json j = call_json({"capacity", "--dims", "1,1", "--q-db", "-300", "--samples", "200"});
    for (const char* key : {"mc_mean", "lower", "upper"})
        CHECK(std::abs(j["result"][key].get<double>()) < 1e-25);
}

TEST_CASE("bits flag rescales capacities")
{
    const json nats = call_json({"capacity", "--dims", "2,3", "--q-db", "10", "--samples", "500"});
    const json bits = call_json({"capacity", "--dims", "2,3", "--q-db", "10", "--samples", "500", "--bits"});
    CHECK(bits["config"]["units"] == "bits");
    CHECK(bits["result"]["upper"].get<double>() ==
          doctest::Approx(nats["result"]["upper"].get<double>() / std::log(2.0)));
}

TEST_CASE("optimize report")
{
    const json j = call_json({"optimize", "--m", "20", "--n0", "2", "--nk", "8"});
    CHECK(j["result"]["best"]["tiers"] == 11);
    CHECK(j["config"]["method"] == "lower");
    CHECK(j["config"]["search"] == "combined");
    CHECK(j["config"]["p_db"] == 20.0);
    CHECK(j["result"]["ranked"].size() == j["result"]["candidates"].get<std::size_t>());

    const json k = call_json({"optimize", "--m", "8", "--n0", "4", "--nk", "8", "--p-db", "15", "--alpha", "3"});
    CHECK(k["result"]["best"]["parts"] == json::array({4, 4}));
}

TEST_CASE("optimize output is byte-identical across runs and thread counts")
{
    const std::vector<std::string> base{"optimize", "--m", "6", "--n0", "2", "--nk", "4", "--method", "mc",
                                        "--search", "full", "--samples", "500", "--seed", "7"};
    auto with_threads = [&](const char* t) {
        auto args = base;
        args.insert(args.end(), {"--threads", t});
        return call(args);
    };
    const Outcome a = with_threads("1");
    const Outcome b = with_threads("1");
    const Outcome c = with_threads("4");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    const json j = json::parse(a.out);
    CHECK(j["result"]["ranked"][0].contains("mc_stderr"));
}

TEST_CASE("sweep csv")
{
    const Outcome o = call({"sweep", "--m", "10"});
    REQUIRE(o.code == 0);
    std::istringstream in(o.out);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line))
        lines.push_back(line);
    REQUIRE(lines.size() == 65);
    CHECK(lines[0] == "index,n0,nk,best_parts,tiers,objective,catalog_index,error\r");
    CHECK(lines[1].rfind("1,1,1,", 0) == 0);
    CHECK(lines[64].rfind("64,8,8,", 0) == 0);

    const Outcome single = call({"sweep", "--m", "4", "--rows", "1", "--cols", "1"});
    REQUIRE(single.code == 0);
    CHECK(single.out.find("1,1,1,") != std::string::npos);

    const Outcome all_fail = call({"sweep", "--m", "61", "--search", "full", "--rows", "1", "--cols", "2"});
    CHECK(all_fail.code == 4);
}

TEST_CASE("partitions subcommand")
{
    CHECK(call_json({"partitions", "--m", "10", "--mode", "count"})["result"]["count"] == 42);
    const double est = call_json({"partitions", "--m", "10", "--mode", "estimate"})["result"]["estimate"];
    CHECK(est == doctest::Approx(48.0).epsilon(0.01));
    const json red = call_json({"partitions", "--m", "10", "--mode", "reduced", "--n0", "4", "--nk", "8"});
    std::vector<std::vector<int>> parts;
    for (const auto& p : red["result"]["partitions"])
        parts.push_back(p["parts"].get<std::vector<int>>());
    CHECK(parts == std::vector<std::vector<int>>{{4, 6}, {5, 5}});
    const json list = call_json({"partitions", "--m", "16", "--mode", "list"});
    CHECK(list["result"]["partitions"].size() == 231);
    const json direct = call_json({"partitions", "--m", "16", "--mode", "direct", "--n0", "6", "--nk", "8"});
    CHECK(direct["result"]["partitions"][0]["parts"] == json::array({6, 10}));
}

TEST_CASE("exit codes")
{
    CHECK(call({}).code == 2);
    CHECK(call({"bogus"}).code == 2);
    CHECK(call({"--help"}).code == 0);
    CHECK(call({"capacity", "--dims", "2,0", "--q-db", "1"}).code == 2);
    CHECK(call({"capacity", "--dims", "2", "--q-db", "1"}).code == 2);
    CHECK(call({"capacity", "--dims", "2,2", "--q-db", "1", "--samples", "1"}).code == 2);
    CHECK(call({"optimize", "--m", "8", "--n0", "4", "--nk", "8", "--alpha", "9"}).code == 2);
    CHECK(call({"optimize", "--m", "8", "--n0", "4", "--nk", "8", "--method", "exact"}).code == 2);
    CHECK(call({"partitions", "--m", "10", "--mode", "reduced"}).code == 2);

    const Outcome numeric = call({"capacity", "--dims", "2,2", "--q-db", "4000", "--samples", "10"});
    CHECK(numeric.code == 3);
    CHECK_FALSE(numeric.err.empty());
    CHECK(numeric.out.empty());

    CHECK(call({"partitions", "--m", "61", "--mode", "list"}).code == 4);
    CHECK(call({"optimize", "--m", "61", "--n0", "2", "--nk", "2", "--search", "full"}).code == 4);
}

TEST_CASE("alpha warning is reported")
{
    const json j = call_json({"optimize", "--m", "6", "--n0", "2", "--nk", "4", "--alpha", "5"});
    CHECK(j["result"]["warnings"].size() == 1);
}
