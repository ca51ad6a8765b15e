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

#include "uavtier/cli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "uavtier/bounds.hpp"
#include "uavtier/montecarlo.hpp"
#include "uavtier/optimizer.hpp"
#include "uavtier/partitions.hpp"

namespace uavtier::cli {

using nlohmann::ordered_json;

namespace {

enum class Format { json, csv, pretty };

Format parse_format(std::string_view s)
{
    if (s == "json")
        return Format::json;
    if (s == "csv")
        return Format::csv;
    if (s == "pretty")
        return Format::pretty;
    throw ValidationError("unknown output format '" + std::string(s) + "' (expected json, csv or pretty)");
}

struct Common {
    std::string output = "json";
    std::uint64_t samples = 20000;
    std::uint64_t seed = 42;
    unsigned threads = 0;
    bool bits = false;

    double unit() const { return bits ? std::numbers::ln2 : 1.0; }
    const char* unit_name() const { return bits ? "bits" : "nats"; }
};

struct CapacityArgs {
    std::string dims;
    double q_db = 0.0;
};

struct PowerArgs {
    int m = 0;
    double p_db = 20.0;
    double alpha = 2.0;
    double cp0 = 1.0;
    std::string method = "lower";
    std::string search = "combined";
};

struct OptimizeArgs {
    PowerArgs power;
    int n0 = 0;
    int nk = 0;
};

struct SweepArgs {
    PowerArgs power;
    int rows = 8;
    int cols = 8;
};

struct PartitionsArgs {
    int m = 0;
    std::string mode = "count";
    std::optional<int> n0;
    std::optional<int> nk;
};

// Same shortest round-trip text in JSON and CSV; non-finite values print as null.
std::string number_text(double v)
{
    return ordered_json(v).dump();
}

ordered_json number_json(double v)
{
    return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

std::string parts_text(const std::vector<int>& parts)
{
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            s += ' ';
        s += std::to_string(parts[i]);
    }
    return s;
}

std::vector<int> parse_dims(const std::string& text)
{
    std::vector<int> dims;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            require(used == item.size(), "");
            dims.push_back(v);
        } catch (const std::exception&) {
            throw ValidationError("--dims expects a comma-separated list of positive integers, got '" + text + "'");
        }
    }
    return dims;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows)
{
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i)
                out << ',';
            out << csv_field(fields[i]);
        }
        out << "\r\n";
    };
    line(header);
    for (const auto& r : rows)
        line(r);
}

ordered_json envelope(std::string_view command, ordered_json config)
{
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["config"] = std::move(config);
    return j;
}

ordered_json power_config(const PowerArgs& a)
{
    return {{"m", a.m},           {"p_db", a.p_db},     {"alpha", a.alpha},
            {"cp0", a.cp0},       {"method", a.method}, {"search", a.search}};
}

void validate_common(const Common& c)
{
    parse_format(c.output);
    require(c.samples >= 2, "--samples must be >= 2");
}

int cmd_capacity(const Common& c, const CapacityArgs& a, std::ostream& out)
{
    validate_common(c);
    const ChannelSpec spec(parse_dims(a.dims));
    const SnrValue q = SnrValue::from_db(a.q_db);
    const CapacityEstimate est = mc_ergodic_capacity(spec, q, c.samples, c.seed, c.threads);
    const BoundsReport b = bounds_report(spec, q);
    const double u = c.unit();

    ordered_json config = {{"dims", std::vector<int>(spec.dims().begin(), spec.dims().end())},
                           {"q_db", a.q_db},
                           {"samples", c.samples},
                           {"seed", c.seed},
                           {"units", c.unit_name()}};
    ordered_json result = {{"mc_mean", number_json(est.mean / u)},
                           {"mc_stderr", number_json(est.std_error / u)},
                           {"lower", number_json(b.lower / u)},
                           {"upper", number_json(b.upper / u)},
                           {"g", number_json(b.g)},
                           {"gap_floor", {{"tight", b.gap_floor.tight / u}, {"loose", b.gap_floor.loose / u}}},
                           {"high_snr", number_json(high_snr_capacity(spec, q) / u)},
                           {"min_dim", spec.min_dim()},
                           {"tiers", spec.tiers()}};

    switch (parse_format(c.output)) {
    case Format::json: {
        ordered_json j = envelope("capacity", std::move(config));
        j["result"] = std::move(result);
        out << j.dump(2) << '\n';
        break;
    }
    case Format::csv:
        write_csv(out,
                  {"dims", "q_db", "samples", "seed", "units", "mc_mean", "mc_stderr", "lower", "upper", "g",
                   "gap_floor_tight", "gap_floor_loose", "high_snr"},
                  {{spec.to_string(), number_text(a.q_db), std::to_string(c.samples), std::to_string(c.seed),
                    c.unit_name(), number_text(est.mean / u), number_text(est.std_error / u), number_text(b.lower / u),
                    number_text(b.upper / u), number_text(b.g), number_text(b.gap_floor.tight / u),
                    number_text(b.gap_floor.loose / u), number_text(high_snr_capacity(spec, q) / u)}});
        break;
    case Format::pretty:
        out << "spec " << spec.to_string() << "  q = " << a.q_db << " dB  (" << c.unit_name() << ")\n"
            << "  monte carlo  " << est.mean / u << " +/- " << est.std_error / u << "  (" << est.samples
            << " samples, seed " << est.seed << ")\n"
            << "  lower bound  " << b.lower / u << '\n'
            << "  upper bound  " << b.upper / u << '\n'
            << "  g            " << b.g << '\n'
            << "  gap floor    " << b.gap_floor.tight / u << " (tight), " << b.gap_floor.loose / u << " (loose)\n";
        break;
    }
    return kSuccess;
}

std::optional<std::uint64_t> safe_catalog_index(const std::vector<int>& parts, int budget)
{
    if (budget > 400)
        return std::nullopt;
    return catalog_index(parts);
}

ordered_json optional_index_json(const std::optional<std::uint64_t>& idx)
{
    return idx ? ordered_json(*idx) : ordered_json(nullptr);
}

std::string optional_index_text(const std::optional<std::uint64_t>& idx)
{
    return idx ? std::to_string(*idx) : std::string();
}

ordered_json ranked_json(const RankedCandidate& rc, std::size_t rank, double u)
{
    ordered_json j = {{"rank", rank},
                      {"parts", rc.candidate.parts},
                      {"tiers", rc.tiers},
                      {"provenance", to_string(rc.candidate.provenance)},
                      {"q_db", number_json(rc.q.db())},
                      {"objective", number_json(rc.objective / u)},
                      {"catalog_index", optional_index_json(safe_catalog_index(rc.candidate.parts, rc.candidate.budget))}};
    if (rc.estimate) {
        j["mc_mean"] = number_json(rc.estimate->mean / u);
        j["mc_stderr"] = number_json(rc.estimate->std_error / u);
    }
    return j;
}

PowerModel power_model(const PowerArgs& a)
{
    require(a.m >= 1, "--m must be >= 1");
    require(std::isfinite(a.cp0) && a.cp0 > 0.0, "--cp0 must be > 0");
    return PowerModel::from_db(a.p_db, a.alpha, a.cp0);
}

OptimizeOptions optimize_options(const Common& c, const PowerArgs& a)
{
    OptimizeOptions o;
    o.method = parse_method(a.method);
    o.search = parse_search(a.search);
    o.samples = c.samples;
    o.seed = c.seed;
    o.threads = c.threads;
    if (o.method == Method::mc)
        require(o.samples >= 100, "--samples must be >= 100 for the mc method");
    return o;
}

int cmd_optimize(const Common& c, const OptimizeArgs& a, std::ostream& out, std::ostream& err)
{
    validate_common(c);
    const PowerModel pm = power_model(a.power);
    require(a.n0 >= 1 && a.nk >= 1, "--n0 and --nk must be >= 1");
    const OptimizeOptions opts = optimize_options(c, a.power);
    for (const auto& w : pm.warnings())
        err << "warning: " << w << '\n';

    const OptimizationResult r = optimize(a.power.m, a.n0, a.nk, pm, opts);
    const double u = c.unit();

    ordered_json config = power_config(a.power);
    config["n0"] = a.n0;
    config["nk"] = a.nk;
    config["samples"] = c.samples;
    config["seed"] = c.seed;
    config["units"] = c.unit_name();

    switch (parse_format(c.output)) {
    case Format::json: {
        ordered_json j = envelope("optimize", std::move(config));
        ordered_json ranked = ordered_json::array();
        for (std::size_t i = 0; i < r.ranked.size(); ++i)
            ranked.push_back(ranked_json(r.ranked[i], i + 1, u));
        j["result"] = {{"best", ranked.front()},
                       {"candidates", r.ranked.size()},
                       {"ranked", ranked},
                       {"tiebreak_trace", r.tiebreak_trace},
                       {"warnings", pm.warnings()}};
        out << j.dump(2) << '\n';
        break;
    }
    case Format::csv: {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < r.ranked.size(); ++i) {
            const auto& rc = r.ranked[i];
            rows.push_back({std::to_string(i + 1), parts_text(rc.candidate.parts), std::to_string(rc.tiers),
                            std::string(to_string(rc.candidate.provenance)), number_text(rc.q.db()),
                            number_text(rc.objective / u),
                            rc.estimate ? number_text(rc.estimate->std_error / u) : std::string(),
                            optional_index_text(safe_catalog_index(rc.candidate.parts, rc.candidate.budget))});
        }
        write_csv(out, {"rank", "parts", "tiers", "provenance", "q_db", "objective", "mc_stderr", "catalog_index"},
                  rows);
        break;
    }
    case Format::pretty: {
        out << "M = " << a.power.m << ", n0 = " << a.n0 << ", nk = " << a.nk << ", p = " << a.power.p_db
            << " dB, alpha = " << a.power.alpha << ", method " << a.power.method << ", search " << a.power.search
            << '\n';
        for (std::size_t i = 0; i < r.ranked.size(); ++i) {
            const auto& rc = r.ranked[i];
            out << "  " << i + 1 << ". " << rc.candidate.to_string() << "  K = " << rc.tiers << "  objective "
                << rc.objective / u << ' ' << c.unit_name();
            if (rc.estimate)
                out << " +/- " << rc.estimate->std_error / u;
            out << '\n';
        }
        for (const auto& t : r.tiebreak_trace)
            out << "  note: " << t << '\n';
        break;
    }
    }
    return kSuccess;
}

int cmd_sweep(const Common& c, const SweepArgs& a, std::ostream& out, std::ostream& err)
{
    validate_common(c);
    const PowerModel pm = power_model(a.power);
    require(a.rows >= 1 && a.cols >= 1, "--rows and --cols must be >= 1");
    const OptimizeOptions opts = optimize_options(c, a.power);
    for (const auto& w : pm.warnings())
        err << "warning: " << w << '\n';

    const std::vector<SweepRow> rows = sweep_grid(a.power.m, pm, opts, a.rows, a.cols);
    const double u = c.unit();
    const bool all_failed = std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.best; });

    switch (parse_format(c.output)) {
    case Format::json: {
        ordered_json config = power_config(a.power);
        config["rows"] = a.rows;
        config["cols"] = a.cols;
        config["samples"] = c.samples;
        config["seed"] = c.seed;
        config["units"] = c.unit_name();
        ordered_json j = envelope("sweep", std::move(config));
        ordered_json cells = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json cell = {{"index", r.index}, {"n0", r.n0}, {"nk", r.nk}};
            if (r.best) {
                cell["parts"] = r.best->candidate.parts;
                cell["tiers"] = r.best->tiers;
                cell["objective"] = number_json(r.best->objective / u);
                cell["catalog_index"] =
                    optional_index_json(safe_catalog_index(r.best->candidate.parts, r.best->candidate.budget));
                cell["error"] = nullptr;
            } else {
                cell["parts"] = nullptr;
                cell["tiers"] = nullptr;
                cell["objective"] = nullptr;
                cell["catalog_index"] = nullptr;
                cell["error"] = r.error;
            }
            cells.push_back(std::move(cell));
        }
        j["result"] = {{"cells", std::move(cells)}};
        out << j.dump(2) << '\n';
        break;
    }
    case Format::csv:
    case Format::pretty: {
        std::vector<std::vector<std::string>> table;
        for (const auto& r : rows) {
            if (r.best)
                table.push_back({std::to_string(r.index), std::to_string(r.n0), std::to_string(r.nk),
                                 parts_text(r.best->candidate.parts), std::to_string(r.best->tiers),
                                 number_text(r.best->objective / u),
                                 optional_index_text(
                                     safe_catalog_index(r.best->candidate.parts, r.best->candidate.budget)),
                                 ""});
            else
                table.push_back({std::to_string(r.index), std::to_string(r.n0), std::to_string(r.nk), "", "", "", "",
                                 r.error});
        }
        write_csv(out, {"index", "n0", "nk", "best_parts", "tiers", "objective", "catalog_index", "error"}, table);
        break;
    }
    }
    for (const auto& r : rows)
        if (!r.best)
            err << "cell " << r.index << " (n0=" << r.n0 << ", nk=" << r.nk << "): " << r.error << '\n';
    if (all_failed && rows.front().failure)
        std::rethrow_exception(rows.front().failure);
    return all_failed ? kNumeric : kSuccess;
}

int cmd_partitions(const Common& c, const PartitionsArgs& a, std::ostream& out)
{
    parse_format(c.output);
    require(a.m >= 1, "--m must be >= 1");

    ordered_json config = {{"m", a.m}, {"mode", a.mode}};
    if (a.n0)
        config["n0"] = *a.n0;
    if (a.nk)
        config["nk"] = *a.nk;

    ordered_json result;
    std::vector<PartitionCandidate> listed;
    bool is_list = false;
    if (a.mode == "count") {
        result = {{"count", count_partitions(a.m)}};
    } else if (a.mode == "estimate") {
        result = {{"estimate", hardy_ramanujan_estimate(a.m)}, {"count", count_partitions(a.m)}};
    } else if (a.mode == "list") {
        listed = enumerate_partitions(a.m);
        is_list = true;
    } else if (a.mode == "reduced" || a.mode == "direct") {
        require(a.n0 && a.nk, "--n0 and --nk are required for mode " + a.mode);
        const TierPlan plan = tier_plan(a.m, *a.n0, *a.nk);
        listed = a.mode == "reduced" ? reduced_candidates(a.m, *a.n0, *a.nk)
                                     : std::vector<PartitionCandidate>{direct_candidate(a.m, *a.n0, *a.nk)};
        result = {{"tiers", plan.tiers}, {"base", plan.base}, {"remainder", plan.remainder}};
        is_list = true;
    } else {
        throw ValidationError("unknown partitions mode '" + a.mode + "' (expected list, count, estimate, reduced or "
                              "direct)");
    }

    if (is_list) {
        ordered_json arr = ordered_json::array();
        for (const auto& p : listed)
            arr.push_back({{"parts", p.parts},
                           {"tiers", p.tiers()},
                           {"provenance", to_string(p.provenance)},
                           {"catalog_index", optional_index_json(safe_catalog_index(p.parts, p.budget))}});
        result["count"] = listed.size();
        result["partitions"] = std::move(arr);
    }

    switch (parse_format(c.output)) {
    case Format::json: {
        ordered_json j = envelope("partitions", std::move(config));
        j["result"] = std::move(result);
        out << j.dump(2) << '\n';
        break;
    }
    case Format::csv:
        if (is_list) {
            std::vector<std::vector<std::string>> rows;
            for (std::size_t i = 0; i < listed.size(); ++i)
                rows.push_back({std::to_string(i + 1), parts_text(listed[i].parts), std::to_string(listed[i].tiers()),
                                std::string(to_string(listed[i].provenance)),
                                optional_index_text(safe_catalog_index(listed[i].parts, listed[i].budget))});
            write_csv(out, {"position", "parts", "tiers", "provenance", "catalog_index"}, rows);
        } else {
            std::vector<std::string> header{"m"};
            std::vector<std::string> row{std::to_string(a.m)};
            for (const auto& [key, value] : result.items()) {
                header.push_back(key);
                row.push_back(value.dump());
            }
            write_csv(out, header, {row});
        }
        break;
    case Format::pretty:
        if (is_list) {
            for (const auto& p : listed)
                out << p.to_string() << '\n';
        } else {
            for (const auto& [key, value] : result.items())
                out << key << ": " << value.dump() << '\n';
        }
        break;
    }
    return kSuccess;
}

void add_common(CLI::App* sub, Common& c, bool with_mc)
{
    sub->add_option("--output", c.output, "json, csv or pretty")->capture_default_str();
    if (with_mc) {
        sub->add_option("--samples", c.samples, "Monte-Carlo samples")->capture_default_str();
        sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
        sub->add_option("--threads", c.threads, "worker threads, 0 = all cores (results do not depend on it)")
            ->capture_default_str();
        sub->add_flag("--bits", c.bits, "report capacities in bits instead of nats");
    }
}

void add_power(CLI::App* sub, PowerArgs& a)
{
    sub->add_option("--m", a.m, "number of UAVs")->required();
    sub->add_option("--p-db", a.p_db, "per-UAV transmit power in dB")->capture_default_str();
    sub->add_option("--alpha", a.alpha, "path-loss exponent")->capture_default_str();
    sub->add_option("--cp0", a.cp0, "attenuation constant times user power (linear)")->capture_default_str();
    sub->add_option("--method", a.method, "upper, lower or mc")->capture_default_str();
    sub->add_option("--search", a.search, "full, reduced, direct or combined")->capture_default_str();
}

} // namespace

std::string csv_field(std::string_view value)
{
    if (value.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(value);
    std::string s = "\"";
    for (char ch : value) {
        if (ch == '"')
            s += '"';
        s += ch;
    }
    return s + '"';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Ergodic capacity and tier planning for multi-tier UAV relay channels", "uavtier"};
    app.require_subcommand(1);

    Common cap_common;
    Common opt_common;
    Common sweep_common;
    sweep_common.output = "csv";
    Common part_common;
    CapacityArgs cap;
    OptimizeArgs opt;
    SweepArgs sweep;
    PartitionsArgs part;

    auto* sc = app.add_subcommand("capacity", "Monte-Carlo capacity with closed-form bounds");
    sc->add_option("--dims", cap.dims, "comma-separated N0,...,NK")->required();
    sc->add_option("--q-db", cap.q_db, "SNR q in dB")->capture_default_str();
    add_common(sc, cap_common, true);

    auto* so = app.add_subcommand("optimize", "rank tier allocations for a UAV budget");
    add_power(so, opt.power);
    so->add_option("--n0", opt.n0, "user antennas")->required();
    so->add_option("--nk", opt.nk, "base-station antennas")->required();
    add_common(so, opt_common, true);

    auto* ss = app.add_subcommand("sweep", "optimize over an (n0, nk) grid");
    add_power(ss, sweep.power);
    ss->add_option("--rows", sweep.rows, "grid rows (n0 values)")->capture_default_str();
    ss->add_option("--cols", sweep.cols, "grid columns (nk values)")->capture_default_str();
    add_common(ss, sweep_common, true);

    auto* sp = app.add_subcommand("partitions", "integer partition tooling");
    sp->add_option("--m", part.m, "number to partition")->required();
    sp->add_option("--mode", part.mode, "list, count, estimate, reduced or direct")->capture_default_str();
    sp->add_option("--n0", part.n0, "user antennas (reduced/direct)");
    sp->add_option("--nk", part.nk, "base-station antennas (reduced/direct)");
    add_common(sp, part_common, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (sc->parsed())
            return cmd_capacity(cap_common, cap, out);
        if (so->parsed())
            return cmd_optimize(opt_common, opt, out, err);
        if (ss->parsed())
            return cmd_sweep(sweep_common, sweep, out, err);
        return cmd_partitions(part_common, part, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumeric;
    }
}

} // namespace uavtier::cli
