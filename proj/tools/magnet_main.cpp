// magnet: model flight schedules as a multiaspect graph, slice it by airline
// and period, and report k-core structure in route and flight views.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "magnet/analysis.hpp"
#include "magnet/bundle.hpp"
#include "magnet/errors.hpp"
#include "magnet/export.hpp"
#include "magnet/ingest.hpp"
#include "magnet/version.hpp"

namespace fs = std::filesystem;
using namespace magnet;

namespace {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kMissingInput = 3,
    kParseFailure = 4,
    kUnresolvedAirport = 5,
    kNotFound = 6,
};

std::string read_file(const fs::path& path) {
    if (!fs::exists(path)) {
        throw IoError("input file '" + path.string() + "' does not exist");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << content;
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

std::string format_delta(std::int64_t percent) {
    return (percent > 0 ? "+" : "") + std::to_string(percent);
}

std::string format_tenths(std::int64_t tenths) {
    const std::int64_t whole = tenths / 10;
    const std::int64_t frac = tenths % 10;
    std::string out = (tenths > 0 ? "+" : "");
    out += std::to_string(whole);
    out += '.';
    out += std::to_string(frac < 0 ? -frac : frac);
    return out;
}

// Right-aligns every column but the first.
void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return;
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        if (widths.size() < row.size()) widths.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i) {
            widths[i] = std::max(widths[i], row[i].size());
        }
    }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i == 0) {
                out << row[i] << std::string(widths[i] - row[i].size(), ' ');
            } else {
                out << "  " << std::string(widths[i] - row[i].size(), ' ') << row[i];
            }
        }
        out << "\n";
    }
}

using ordered_json = nlohmann::ordered_json;

// Provenance sidecar written next to every exported artifact: the command
// that produced it plus the source bundle's own manifest.
ordered_json artifact_manifest(const Bundle& bundle, const std::string& command,
                               const std::vector<std::pair<std::string, std::string>>& parameters) {
    ordered_json doc;
    doc["tool"] = "magnet";
    doc["tool_version"] = std::string(kToolVersion);
    doc["created_utc"] = RunManifest::now_utc();
    doc["command"] = command;
    ordered_json params = ordered_json::object();
    for (const auto& [key, value] : parameters) {
        params[key] = value;
    }
    doc["parameters"] = std::move(params);
    ordered_json source;
    source["command"] = bundle.manifest.command;
    source["inputs"] = bundle.manifest.inputs;
    ordered_json source_params = ordered_json::object();
    for (const auto& [key, value] : bundle.manifest.parameters) {
        source_params[key] = value;
    }
    source["parameters"] = std::move(source_params);
    doc["source"] = std::move(source);
    return doc;
}

void write_artifact(const std::string& path, std::string_view content, const ordered_json& manifest) {
    write_file(path, content);
    write_file(path + ".manifest.json", manifest.dump(2) + "\n");
}

GraphMode parse_mode(const std::string& mode) {
    if (mode == "digraph") return GraphMode::digraph;
    if (mode == "multidigraph") return GraphMode::multidigraph;
    throw CLI::ValidationError("--mode", "expected 'digraph' or 'multidigraph'");
}

std::string config_value(const RunManifest& manifest, std::string_view key) {
    for (const auto& [k, v] : manifest.parameters) {
        if (k == key) return v;
    }
    return "?";
}

void print_bundle_header(std::ostream& out, const std::string& path, const Bundle& bundle) {
    out << "# bundle=" << path << " min_connect=" << config_value(bundle.manifest, "min_connect_minutes")
        << " max_connect=" << config_value(bundle.manifest, "max_connect_minutes")
        << " cross_airline=" << config_value(bundle.manifest, "cross_airline_connections") << "\n";
}

std::uint32_t resolve_period(const Bundle& bundle, const std::optional<std::uint32_t>& requested) {
    const std::vector<std::uint32_t> periods = periods_in(bundle.mag);
    if (requested) {
        if (std::find(periods.begin(), periods.end(), *requested) == periods.end()) {
            throw NotFoundError("period " + std::to_string(*requested) + " not present in the bundle");
        }
        return *requested;
    }
    if (periods.size() == 1) return periods.front();
    throw CLI::ValidationError("--period", "bundle holds several periods; pick one");
}

// ---------------------------------------------------------------------------
// ingest

struct IngestArgs {
    std::vector<std::string> schedules;
    std::string airports;
    std::string out;
    std::string config_file;
    std::uint32_t min_connect = 30;
    std::uint32_t max_connect = 360;
    bool cross_airline = false;
    std::string airlines; // comma separated
    bool min_set = false, max_set = false, cross_set = false, airlines_set = false;
};

BuildConfig assemble_config(const IngestArgs& args) {
    BuildConfig config;

    if (!args.config_file.empty()) {
        const std::string text = read_file(args.config_file);
        std::istringstream lines(text);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(lines, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t") == std::string::npos) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw CLI::ValidationError("--config", "line " + std::to_string(line_no) + ": expected key=value");
            }
            auto strip = [](std::string s) {
                const auto b = s.find_first_not_of(" \t");
                const auto e = s.find_last_not_of(" \t");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            const std::string key = strip(line.substr(0, eq));
            const std::string value = strip(line.substr(eq + 1));
            if (key == "min_connect_minutes") {
                config.min_connect_minutes = static_cast<std::uint32_t>(std::stoul(value));
            } else if (key == "max_connect_minutes") {
                config.max_connect_minutes = static_cast<std::uint32_t>(std::stoul(value));
            } else if (key == "cross_airline_connections") {
                config.cross_airline_connections = (value == "true" || value == "1");
            } else if (key == "airlines") {
                config.airlines_filter.emplace();
                std::istringstream parts(value);
                std::string part;
                while (std::getline(parts, part, ',')) {
                    if (!part.empty()) config.airlines_filter->insert(part);
                }
            } else {
                throw CLI::ValidationError("--config", "unknown key '" + key + "'");
            }
        }
    }

    // Explicit flags beat config-file values.
    if (args.min_set) config.min_connect_minutes = args.min_connect;
    if (args.max_set) config.max_connect_minutes = args.max_connect;
    if (args.cross_set) config.cross_airline_connections = args.cross_airline;
    if (args.airlines_set) {
        config.airlines_filter.emplace();
        std::istringstream parts(args.airlines);
        std::string part;
        while (std::getline(parts, part, ',')) {
            if (!part.empty()) config.airlines_filter->insert(part);
        }
    }
    config.validate();
    return config;
}

int run_ingest(const IngestArgs& args) {
    const BuildConfig config = assemble_config(args);

    AirportRegistry registry = AirportRegistry::parse(read_file(args.airports));

    std::vector<ScheduleRecord> records;
    for (const std::string& path : args.schedules) {
        ParseResult parsed = parse_schedule(read_file(path));
        for (const Diagnostic& d : parsed.diagnostics) {
            std::cerr << path << ":" << d.line << ": " << d.message << "\n";
        }
        records.insert(records.end(), parsed.records.begin(), parsed.records.end());
    }

    BuildResult built = build_mag(records, config, registry);
    for (const Diagnostic& d : built.diagnostics) {
        std::cerr << d.message << "\n";
    }

    Bundle bundle;
    bundle.mag = std::move(built.mag);

    // Keep only registry entries the schema references.
    const AspectSchema& schema = bundle.mag.schema();
    const std::size_t airport_aspect = *schema.aspect_index(kAirportAspect);
    for (const std::string& code : schema.aspect(airport_aspect).elements) {
        bundle.airports.add(code, *registry.find(code));
    }

    bundle.manifest.version = std::string(kToolVersion);
    bundle.manifest.created_utc = RunManifest::now_utc();
    bundle.manifest.command = "ingest";
    bundle.manifest.inputs = args.schedules;
    bundle.manifest.inputs.push_back(args.airports);
    std::string airlines_value = "all";
    if (config.airlines_filter) {
        airlines_value.clear();
        for (const std::string& a : *config.airlines_filter) {
            if (!airlines_value.empty()) airlines_value += ",";
            airlines_value += a;
        }
    }
    bundle.manifest.parameters = {
        {"airlines", airlines_value},
        {"cross_airline_connections", config.cross_airline_connections ? "true" : "false"},
        {"max_connect_minutes", std::to_string(config.max_connect_minutes)},
        {"min_connect_minutes", std::to_string(config.min_connect_minutes)},
    };

    save_bundle(bundle, args.out);

    const std::uint64_t flight_edges = extract_records(bundle.mag).size();
    std::cout << "bundle=" << args.out << " edges=" << bundle.mag.edge_count() << " flights=" << flight_edges
              << " connections=" << bundle.mag.edge_count() - flight_edges
              << " airlines=" << airlines_in(bundle.mag).size() << " periods=" << periods_in(bundle.mag).size()
              << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// summarize

struct SummarizeArgs {
    std::string bundle;
    std::optional<std::uint32_t> period;
    std::string airline;
    std::string csv_out;
    bool undirected_routes = false;
};

int run_summarize(const SummarizeArgs& args) {
    const Bundle bundle = load_bundle(args.bundle);
    print_bundle_header(std::cout, args.bundle, bundle);

    std::vector<std::string> airlines = airlines_in(bundle.mag);
    if (!args.airline.empty()) {
        if (std::find(airlines.begin(), airlines.end(), args.airline) == airlines.end()) {
            throw NotFoundError("unknown airline '" + args.airline + "'");
        }
        airlines = {args.airline};
    }
    std::vector<std::uint32_t> periods = periods_in(bundle.mag);
    if (args.period) {
        if (std::find(periods.begin(), periods.end(), *args.period) == periods.end()) {
            throw NotFoundError("period " + std::to_string(*args.period) + " not present in the bundle");
        }
        periods = {*args.period};
    }

    std::vector<std::vector<LayerSummary>> table; // [airline][period]
    for (const std::string& airline : airlines) {
        std::vector<LayerSummary> row;
        for (std::uint32_t period : periods) {
            row.push_back(layer_summary(bundle.mag, airline, period,
                                        args.undirected_routes ? RouteCounting::unordered
                                                               : RouteCounting::directed));
        }
        table.push_back(std::move(row));
    }

    auto delta_cell = [](std::uint64_t before, std::uint64_t after) {
        if (before == 0) return std::string("n/a");
        return format_delta(percent_delta(before, after));
    };

    std::ostringstream csv;
    if (periods.size() == 2) {
        const std::string pa = std::to_string(periods[0]);
        const std::string pb = std::to_string(periods[1]);
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"airline", "airports p" + pa, "airports p" + pb, "diff%", "routes p" + pa, "routes p" + pb,
                        "diff%", "flights p" + pa, "flights p" + pb, "diff%"});
        csv << "airline,airports_p" << pa << ",airports_p" << pb << ",airports_diff_pct,routes_p" << pa << ",routes_p"
            << pb << ",routes_diff_pct,flights_p" << pa << ",flights_p" << pb << ",flights_diff_pct\n";
        std::uint64_t routes_a = 0, routes_b = 0, flights_a = 0, flights_b = 0;
        for (const auto& row : table) {
            const LayerSummary& a = row[0];
            const LayerSummary& b = row[1];
            rows.push_back({a.airline, std::to_string(a.airports), std::to_string(b.airports),
                            delta_cell(a.airports, b.airports), std::to_string(a.routes), std::to_string(b.routes),
                            delta_cell(a.routes, b.routes), std::to_string(a.flights), std::to_string(b.flights),
                            delta_cell(a.flights, b.flights)});
            csv << a.airline << "," << a.airports << "," << b.airports << "," << delta_cell(a.airports, b.airports)
                << "," << a.routes << "," << b.routes << "," << delta_cell(a.routes, b.routes) << "," << a.flights
                << "," << b.flights << "," << delta_cell(a.flights, b.flights) << "\n";
            routes_a += a.routes;
            routes_b += b.routes;
            flights_a += a.flights;
            flights_b += b.flights;
        }
        if (table.size() > 1) {
            rows.push_back({"TOTAL", "-", "-", "-", std::to_string(routes_a), std::to_string(routes_b),
                            delta_cell(routes_a, routes_b), std::to_string(flights_a), std::to_string(flights_b),
                            delta_cell(flights_a, flights_b)});
        }
        print_table(std::cout, rows);
    } else {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"airline", "period", "airports", "routes", "flights"});
        csv << "airline,period,airports,routes,flights\n";
        std::uint64_t routes_total = 0, flights_total = 0;
        for (const auto& row : table) {
            for (const LayerSummary& s : row) {
                rows.push_back({s.airline, std::to_string(s.period), std::to_string(s.airports),
                                std::to_string(s.routes), std::to_string(s.flights)});
                csv << s.airline << "," << s.period << "," << s.airports << "," << s.routes << "," << s.flights
                    << "\n";
                routes_total += s.routes;
                flights_total += s.flights;
            }
        }
        if (table.size() > 1 && periods.size() == 1) {
            rows.push_back({"TOTAL", std::to_string(periods[0]), "-", std::to_string(routes_total),
                            std::to_string(flights_total)});
        }
        print_table(std::cout, rows);
    }

    if (!args.csv_out.empty()) {
        write_artifact(args.csv_out, csv.str(),
                       artifact_manifest(bundle, "summarize",
                                         {{"airline", args.airline.empty() ? "all" : args.airline},
                                          {"bundle", args.bundle},
                                          {"period", args.period ? std::to_string(*args.period) : "all"},
                                          {"undirected_routes", args.undirected_routes ? "true" : "false"}}));
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// kcore / export

struct KcoreArgs {
    std::string bundle;
    std::string mode = "digraph";
    std::string airline = std::string(kWholeNetwork);
    std::optional<std::uint32_t> period;
    std::optional<std::uint64_t> level;
    std::string geojson_out;
    std::string dot_out;
    std::string csv_out;
    bool dot_collapse = false;
};

void write_graph_exports(const LabeledGraph& graph, const Bundle& bundle, GraphMode mode, const KcoreArgs& args,
                         const std::string& command) {
    std::vector<std::pair<std::string, std::string>> params = {
        {"airline", args.airline},
        {"bundle", args.bundle},
        {"mode", args.mode},
        {"period", args.period ? std::to_string(*args.period) : "auto"},
    };
    if (args.level) {
        params.emplace_back("k", std::to_string(*args.level));
    }
    const ordered_json manifest = artifact_manifest(bundle, command, params);

    if (!args.geojson_out.empty()) {
        write_artifact(args.geojson_out, export_geojson(graph, bundle.airports, mode), manifest);
    }
    if (!args.dot_out.empty()) {
        write_artifact(args.dot_out, export_dot(graph, DotOptions{args.dot_collapse}), manifest);
    }
    if (!args.csv_out.empty()) {
        std::ostringstream csv;
        csv << "from,to,multiplicity\n";
        for (const LabeledEdge& e : graph.edges) {
            csv << e.from << "," << e.to << "," << e.multiplicity << "\n";
        }
        write_artifact(args.csv_out, csv.str(), manifest);
    }
}

int run_kcore(const KcoreArgs& args) {
    const Bundle bundle = load_bundle(args.bundle);
    const GraphMode mode = parse_mode(args.mode);
    const std::uint32_t period = resolve_period(bundle, args.period);

    print_bundle_header(std::cout, args.bundle, bundle);
    const CoreReport report = core_report(bundle.mag, args.airline, period, mode, args.level);

    const char* edge_word = mode == GraphMode::digraph ? "routes" : "flights";
    std::cout << "airline=" << args.airline << " period=" << period << " mode=" << to_string(mode) << "\n";
    std::cout << "K=" << report.row.k << " airports=" << report.row.airports << " " << edge_word << "="
              << report.row.edges;
    if (args.level && *args.level > report.max_k) {
        std::cout << " (empty: K exceeds maximum " << report.max_k << ")";
    }
    std::cout << "\n";

    write_graph_exports(report.core.graph, bundle, mode, args, "kcore");
    return kOk;
}

int run_export(const KcoreArgs& args) {
    const Bundle bundle = load_bundle(args.bundle);
    const GraphMode mode = parse_mode(args.mode);
    const std::uint32_t period = resolve_period(bundle, args.period);

    print_bundle_header(std::cout, args.bundle, bundle);
    const LabeledGraph graph = layer_graph(bundle.mag, args.airline, period, mode);

    const char* edge_word = mode == GraphMode::digraph ? "routes" : "flights";
    std::cout << "airline=" << args.airline << " period=" << period << " mode=" << to_string(mode)
              << " airports=" << graph.vertices.size() << " " << edge_word << "="
              << (mode == GraphMode::digraph ? graph.edges.size() : graph.multiplicity_total()) << "\n";

    write_graph_exports(graph, bundle, mode, args, "export");
    return kOk;
}

// ---------------------------------------------------------------------------
// subdet

struct SubdetArgs {
    std::string bundle;
    std::string keep;
    std::string mode = "digraph";
    std::string self_loops = "drop";
    std::string dot_out;
    std::string csv_out;
    bool dot_collapse = false;
};

int run_subdet(const SubdetArgs& args) {
    const Bundle bundle = load_bundle(args.bundle);
    const GraphMode mode = parse_mode(args.mode);
    SelfLoops loops;
    if (args.self_loops == "drop") {
        loops = SelfLoops::drop;
    } else if (args.self_loops == "keep") {
        loops = SelfLoops::keep;
    } else {
        throw CLI::ValidationError("--self-loops", "expected 'drop' or 'keep'");
    }

    std::vector<std::string> names;
    std::istringstream parts(args.keep);
    std::string part;
    while (std::getline(parts, part, ',')) {
        if (!part.empty()) names.push_back(part);
    }
    const SubDetMask mask = SubDetMask::keep_named(bundle.mag.schema(), names);

    print_bundle_header(std::cout, args.bundle, bundle);
    LabeledGraph graph;
    std::uint64_t dropped = 0;
    std::uint64_t edge_view = 0;
    if (mode == GraphMode::digraph) {
        SubDeterminedSimple simple = sub_determine_digraph(bundle.mag, mask, loops);
        dropped = simple.dropped_self_loops;
        edge_view = simple.graph.edge_count();
        graph = label_graph(simple.schema, simple.graph);
    } else {
        SubDeterminedMulti multi = sub_determine_multidigraph(bundle.mag, mask, loops);
        dropped = multi.dropped_self_loops;
        edge_view = multi.graph.edge_entry_count();
        graph = label_graph(multi.schema, multi.graph);
    }

    std::cout << "keep=" << args.keep << " mode=" << to_string(mode) << " vertices=" << graph.vertices.size()
              << " edges=" << edge_view << " dropped_self_loops=" << dropped << "\n";

    const ordered_json manifest = artifact_manifest(bundle, "subdet",
                                                    {{"bundle", args.bundle},
                                                     {"keep", args.keep},
                                                     {"mode", args.mode},
                                                     {"self_loops", args.self_loops}});
    if (!args.dot_out.empty()) {
        write_artifact(args.dot_out, export_dot(graph, DotOptions{args.dot_collapse}), manifest);
    }
    if (!args.csv_out.empty()) {
        std::ostringstream csv;
        csv << "from,to,multiplicity\n";
        for (const LabeledEdge& e : graph.edges) {
            csv << "\"" << e.from << "\",\"" << e.to << "\"," << e.multiplicity << "\n";
        }
        write_artifact(args.csv_out, csv.str(), manifest);
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// codeshare

struct CodeshareArgs {
    std::string bundle;
    std::optional<std::uint32_t> period;
    std::uint32_t tolerance = 0;
    bool list = false;
};

int run_codeshare(const CodeshareArgs& args) {
    const Bundle bundle = load_bundle(args.bundle);
    print_bundle_header(std::cout, args.bundle, bundle);

    const std::vector<ScheduleRecord> records = extract_records(bundle.mag);
    std::vector<std::uint32_t> periods = periods_in(bundle.mag);
    if (args.period) {
        if (std::find(periods.begin(), periods.end(), *args.period) == periods.end()) {
            throw NotFoundError("period " + std::to_string(*args.period) + " not present in the bundle");
        }
        periods = {*args.period};
    }

    std::vector<std::uint64_t> counts;
    for (std::uint32_t period : periods) {
        const CodeshareResult result = codeshare_count(records, period, args.tolerance);
        counts.push_back(result.participating);
        std::cout << "period=" << period << " codeshare_flights=" << result.participating << "\n";
        if (args.list) {
            for (const CodeshareGroup& group : result.groups) {
                const ScheduleRecord& first = group.flights.front();
                std::cout << "  " << first.origin << "->" << first.destination << " dep=" << first.dep_minute
                          << " arr=" << first.arr_minute << ":";
                for (const ScheduleRecord& r : group.flights) {
                    std::cout << " " << r.airline << " " << r.flight_number;
                }
                std::cout << "\n";
            }
        }
    }
    if (counts.size() == 2 && counts[0] > 0) {
        std::cout << "change=" << format_tenths(percent_delta_tenths(counts[0], counts[1])) << "%\n";
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiaspect graph toolkit for flight-schedule network analysis"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    IngestArgs ingest;
    CLI::App* cmd_ingest = app.add_subcommand("ingest", "build a graph bundle from schedule CSVs");
    cmd_ingest->add_option("--schedule", ingest.schedules, "schedule CSV path (repeatable)")
        ->required()
        ->take_all();
    cmd_ingest->add_option("--airports", ingest.airports, "airport registry CSV (iata,name,lat,lon)")->required();
    cmd_ingest->add_option("--out", ingest.out, "bundle output path")->required();
    cmd_ingest->add_option("--config", ingest.config_file, "key=value file overriding build defaults");
    auto* min_opt = cmd_ingest->add_option("--min-connect", ingest.min_connect,
                                           "minimum connection gap in minutes")
                        ->capture_default_str();
    auto* max_opt = cmd_ingest->add_option("--max-connect", ingest.max_connect,
                                           "maximum connection gap in minutes")
                        ->capture_default_str();
    auto* cross_opt = cmd_ingest->add_flag("--cross-airline", ingest.cross_airline,
                                           "allow connections between different airlines");
    auto* airlines_opt =
        cmd_ingest->add_option("--airlines", ingest.airlines, "comma-separated airline filter (default: all)");

    SummarizeArgs summarize;
    CLI::App* cmd_summarize = app.add_subcommand("summarize", "airports/routes/flights per airline and period");
    cmd_summarize->add_option("--bundle", summarize.bundle, "bundle path")->required();
    std::uint32_t summarize_period = 0;
    auto* sp_opt = cmd_summarize->add_option("--period", summarize_period, "restrict to one period");
    cmd_summarize->add_option("--airline", summarize.airline, "restrict to one airline");
    cmd_summarize->add_option("--csv", summarize.csv_out, "also write rows as CSV");
    cmd_summarize->add_flag("--undirected-routes", summarize.undirected_routes,
                            "count a route and its reverse as one");

    KcoreArgs kcore_args;
    CLI::App* cmd_kcore = app.add_subcommand("kcore", "k-core of an airline layer or the whole network");
    cmd_kcore->add_option("--bundle", kcore_args.bundle, "bundle path")->required();
    cmd_kcore->add_option("--mode", kcore_args.mode, "digraph (routes) or multidigraph (flights)")
        ->capture_default_str();
    cmd_kcore->add_option("--airline", kcore_args.airline, "airline code; '*' means whole network")
        ->capture_default_str();
    std::uint32_t kcore_period = 0;
    auto* kp_opt = cmd_kcore->add_option("--period", kcore_period, "period id");
    std::uint64_t kcore_level = 0;
    auto* kl_opt = cmd_kcore->add_option("--k", kcore_level, "report this core level instead of the maximum");
    cmd_kcore->add_option("--geojson", kcore_args.geojson_out, "write the core as GeoJSON");
    cmd_kcore->add_option("--dot", kcore_args.dot_out, "write the core as DOT");
    cmd_kcore->add_option("--csv", kcore_args.csv_out, "write the core edge list as CSV");
    cmd_kcore->add_flag("--dot-collapse", kcore_args.dot_collapse, "one DOT statement per pair with a count label");

    KcoreArgs export_args;
    CLI::App* cmd_export = app.add_subcommand("export", "full layer graph as GeoJSON/DOT/CSV");
    cmd_export->add_option("--bundle", export_args.bundle, "bundle path")->required();
    cmd_export->add_option("--mode", export_args.mode, "digraph (routes) or multidigraph (flights)")
        ->capture_default_str();
    cmd_export->add_option("--airline", export_args.airline, "airline code; '*' means whole network")
        ->capture_default_str();
    std::uint32_t export_period = 0;
    auto* ep_opt = cmd_export->add_option("--period", export_period, "period id");
    cmd_export->add_option("--geojson", export_args.geojson_out, "write GeoJSON");
    cmd_export->add_option("--dot", export_args.dot_out, "write DOT");
    cmd_export->add_option("--csv", export_args.csv_out, "write the edge list as CSV");
    cmd_export->add_flag("--dot-collapse", export_args.dot_collapse, "one DOT statement per pair with a count label");

    SubdetArgs subdet;
    CLI::App* cmd_subdet = app.add_subcommand("subdet", "aggregate the graph over a subset of aspects");
    cmd_subdet->add_option("--bundle", subdet.bundle, "bundle path")->required();
    cmd_subdet->add_option("--keep", subdet.keep, "comma-separated aspects to keep (e.g. airport,period)")
        ->required();
    cmd_subdet->add_option("--mode", subdet.mode, "digraph or multidigraph")->capture_default_str();
    cmd_subdet->add_option("--self-loops", subdet.self_loops, "drop or keep")->capture_default_str();
    cmd_subdet->add_option("--dot", subdet.dot_out, "write DOT");
    cmd_subdet->add_option("--csv", subdet.csv_out, "write the edge list as CSV");
    cmd_subdet->add_flag("--dot-collapse", subdet.dot_collapse, "one DOT statement per pair with a count label");

    CodeshareArgs codeshare;
    CLI::App* cmd_codeshare = app.add_subcommand("codeshare", "flights shared across airline codes");
    cmd_codeshare->add_option("--bundle", codeshare.bundle, "bundle path")->required();
    std::uint32_t codeshare_period = 0;
    auto* cp_opt = cmd_codeshare->add_option("--period", codeshare_period, "restrict to one period");
    cmd_codeshare->add_option("--tolerance", codeshare.tolerance, "time tolerance in minutes; 0 is exact")
        ->capture_default_str();
    cmd_codeshare->add_flag("--list", codeshare.list, "print each codeshare group");

    try {
        app.parse(argc, argv);

        ingest.min_set = min_opt->count() > 0;
        ingest.max_set = max_opt->count() > 0;
        ingest.cross_set = cross_opt->count() > 0;
        ingest.airlines_set = airlines_opt->count() > 0;
        if (sp_opt->count() > 0) summarize.period = summarize_period;
        if (kp_opt->count() > 0) kcore_args.period = kcore_period;
        if (kl_opt->count() > 0) kcore_args.level = kcore_level;
        if (ep_opt->count() > 0) export_args.period = export_period;
        if (cp_opt->count() > 0) codeshare.period = codeshare_period;

        if (cmd_ingest->parsed()) return run_ingest(ingest);
        if (cmd_summarize->parsed()) return run_summarize(summarize);
        if (cmd_kcore->parsed()) return run_kcore(kcore_args);
        if (cmd_export->parsed()) return run_export(export_args);
        if (cmd_subdet->parsed()) return run_subdet(subdet);
        if (cmd_codeshare->parsed()) return run_codeshare(codeshare);
        return kUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseFailure;
    } catch (const EmptyInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseFailure;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMissingInput;
    } catch (const UnresolvedAirportError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnresolvedAirport;
    } catch (const NotFoundError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNotFound;
    } catch (const InvalidMaskError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidSelectorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
}
