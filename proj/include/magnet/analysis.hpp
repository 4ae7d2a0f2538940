#ifndef MAGNET_ANALYSIS_HPP
#define MAGNET_ANALYSIS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "magnet/ingest.hpp"
#include "magnet/kcore.hpp"
#include "magnet/mag.hpp"

namespace magnet {

// Pseudo-airline selecting every flight layer at once.
inline constexpr std::string_view kWholeNetwork = "*";

enum class GraphMode { digraph, multidigraph };

std::string_view to_string(GraphMode mode);

// Airlines that own a flight layer, in schema order.
std::vector<std::string> airlines_in(const Mag& m);

// Period ids present in the schema, ascending.
std::vector<std::uint32_t> periods_in(const Mag& m);

// Routes are directed origin->destination pairs by default; unordered
// counting merges a route with its reverse.
enum class RouteCounting { directed, unordered };

// Per-airline, per-period counts over the flight layer sub-determined to
// airports: served airports, distinct routes, and flights.
struct LayerSummary {
    std::string airline;
    std::uint32_t period = 0;
    std::uint64_t airports = 0;
    std::uint64_t routes = 0;
    std::uint64_t flights = 0;

    friend bool operator==(const LayerSummary&, const LayerSummary&) = default;
};

LayerSummary layer_summary(const Mag& m, std::string_view airline, std::uint32_t period,
                           RouteCounting routes = RouteCounting::directed);

// Signed percent change rounded to the nearest integer, ties away from zero.
// Throws UndefinedDeltaError when before is zero.
std::int64_t percent_delta(std::uint64_t before, std::uint64_t after);

// Same, in tenths of a percent (one-decimal reporting).
std::int64_t percent_delta_tenths(std::uint64_t before, std::uint64_t after);

// 100 * part / whole in tenths of a percent, rounded half away from zero.
std::int64_t share_tenths(std::uint64_t part, std::uint64_t whole);

// A graph or core resolved to airport-code (or joined-label) vertex names.
// Vertices are sorted; parallel edges are aggregated per ordered pair.
struct LabeledEdge {
    std::string from;
    std::string to;
    std::uint64_t multiplicity = 1;

    friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
    friend auto operator<=>(const LabeledEdge&, const LabeledEdge&) = default;
};

struct LabeledGraph {
    std::vector<std::string> vertices;
    std::vector<LabeledEdge> edges;

    std::uint64_t multiplicity_total() const;

    friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;
};

struct LabeledCore {
    std::uint64_t k = 0;
    LabeledGraph graph;
};

// Vertex label: per-aspect element labels joined with '|' (a bare airport
// code when only the airport aspect is kept).
std::string vertex_label(const AspectSchema& schema, VertexId id);

LabeledGraph label_graph(const AspectSchema& schema, const MultiDigraph& g);
LabeledGraph label_graph(const AspectSchema& schema, const Digraph& g);
LabeledCore label_core(const AspectSchema& schema, const CoreSubgraph& core);

struct CoreReportRow {
    std::string airline; // kWholeNetwork for the whole-network view
    std::uint32_t period = 0;
    GraphMode mode = GraphMode::digraph;
    std::uint64_t k = 0;
    std::uint64_t airports = 0;
    std::uint64_t edges = 0; // routes in digraph mode, flights in multidigraph mode

    friend bool operator==(const CoreReportRow&, const CoreReportRow&) = default;
};

struct CoreReport {
    CoreReportRow row;
    LabeledCore core;
    std::uint64_t max_k = 0; // largest k with a nonempty core in this layer
};

// Maximum-core summary of an airline's flight layer (or the whole network
// with airline = "*") at one period, sub-determined to airports, using
// multiplicity-weighted total degree. An empty layer yields a k = 0 row.
// With an explicit level the report covers that k-core instead (empty when
// level exceeds max_k).
CoreReport core_report(const Mag& m, std::string_view airline, std::uint32_t period, GraphMode mode,
                       std::optional<std::uint64_t> level = std::nullopt);

// Full airport graph of an airline's flight layer (whole network with "*").
LabeledGraph layer_graph(const Mag& m, std::string_view airline, std::uint32_t period, GraphMode mode);

// True when the vertex sets and aggregated edge multisets coincide.
bool core_equal(const LabeledCore& a, const LabeledCore& b);

// Codeshare flights at one period: legs with identical endpoints whose
// departure and arrival times agree within tolerance_minutes (circular,
// exact when zero), operated under at least two distinct airline codes.
struct CodeshareGroup {
    std::vector<ScheduleRecord> flights;
};

struct CodeshareResult {
    std::uint64_t participating = 0; // records belonging to qualifying groups
    std::vector<CodeshareGroup> groups;
};

CodeshareResult codeshare_count(std::span<const ScheduleRecord> records, std::uint32_t period,
                                std::uint32_t tolerance_minutes = 0);

// Reconstructs the schedule records stored in a built Mag's flight layers.
std::vector<ScheduleRecord> extract_records(const Mag& m);

} // namespace magnet

#endif // MAGNET_ANALYSIS_HPP
