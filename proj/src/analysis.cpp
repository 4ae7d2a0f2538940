#include "magnet/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <set>

#include "magnet/errors.hpp"

namespace magnet {

std::string_view to_string(GraphMode mode) {
    return mode == GraphMode::digraph ? "digraph" : "multidigraph";
}

namespace {

std::size_t require_aspect(const Mag& m, std::string_view name) {
    auto idx = m.schema().aspect_index(name);
    if (!idx) {
        throw NotFoundError("graph has no '" + std::string(name) + "' aspect; not built from a schedule");
    }
    return *idx;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::uint32_t parse_u32_label(const std::string& label) {
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), value);
    if (ec != std::errc{} || ptr != label.data() + label.size()) {
        throw NotFoundError("label '" + label + "' is not a number");
    }
    return value;
}

// Flight-layer labels for one airline or for the whole network.
std::vector<std::string> flight_layers_for(const Mag& m, std::string_view airline) {
    const std::size_t layer_aspect = require_aspect(m, kLayerAspect);
    const Aspect& layers = m.schema().aspect(layer_aspect);
    std::vector<std::string> selected;
    if (airline == kWholeNetwork) {
        for (const std::string& label : layers.elements) {
            if (ends_with(label, kFlightLayerSuffix)) selected.push_back(label);
        }
        if (selected.empty()) {
            throw NotFoundError("no flight layers present");
        }
    } else {
        const std::string label = flight_layer(airline);
        if (!m.schema().element_index(layer_aspect, label)) {
            throw NotFoundError("unknown airline '" + std::string(airline) + "'");
        }
        selected.push_back(label);
    }
    return selected;
}

std::string require_period_label(const Mag& m, std::uint32_t period) {
    const std::size_t period_aspect = require_aspect(m, kPeriodAspect);
    std::string label = std::to_string(period);
    if (!m.schema().element_index(period_aspect, label)) {
        throw NotFoundError("unknown period " + label);
    }
    return label;
}

Mag flight_layer_sub_mag(const Mag& m, std::string_view airline, std::uint32_t period) {
    std::map<std::string, std::vector<std::string>> selection;
    selection[std::string(kLayerAspect)] = flight_layers_for(m, airline);
    selection[std::string(kPeriodAspect)] = {require_period_label(m, period)};
    return sub_mag_by_name(m, selection);
}

SubDetMask airport_mask(const AspectSchema& schema) {
    const std::string names[] = {std::string(kAirportAspect)};
    SubDetMask mask = SubDetMask::keep_named(schema, names);
    if (!mask.is_proper()) {
        throw InvalidMaskError("schema has no aspect to drop besides '" + std::string(kAirportAspect) + "'");
    }
    return mask;
}

} // namespace

std::vector<std::string> airlines_in(const Mag& m) {
    const std::size_t layer_aspect = require_aspect(m, kLayerAspect);
    std::vector<std::string> airlines;
    for (const std::string& label : m.schema().aspect(layer_aspect).elements) {
        if (ends_with(label, kFlightLayerSuffix)) {
            airlines.push_back(label.substr(0, label.size() - kFlightLayerSuffix.size()));
        }
    }
    return airlines;
}

std::vector<std::uint32_t> periods_in(const Mag& m) {
    const std::size_t period_aspect = require_aspect(m, kPeriodAspect);
    std::vector<std::uint32_t> periods;
    for (const std::string& label : m.schema().aspect(period_aspect).elements) {
        periods.push_back(parse_u32_label(label));
    }
    std::sort(periods.begin(), periods.end());
    return periods;
}

LayerSummary layer_summary(const Mag& m, std::string_view airline, std::uint32_t period, RouteCounting routes) {
    if (airline == kWholeNetwork) {
        throw NotFoundError("layer_summary expects a single airline");
    }
    Mag layer = flight_layer_sub_mag(m, airline, period);
    const SubDetMask mask = airport_mask(layer.schema());

    SubDeterminedMulti multi = sub_determine_multidigraph(layer, mask);
    SubDeterminedSimple simple = sub_determine_digraph(layer, mask);

    std::set<VertexId> touched;
    for (const GraphEdge& e : multi.graph.edges()) {
        touched.insert(e.from);
        touched.insert(e.to);
    }

    LayerSummary out;
    out.airline = airline;
    out.period = period;
    out.airports = touched.size();
    if (routes == RouteCounting::directed) {
        out.routes = simple.graph.edge_count();
    } else {
        std::set<std::pair<VertexId, VertexId>> unordered;
        for (const auto& [from, to] : simple.graph.edges()) {
            unordered.insert({std::min(from, to), std::max(from, to)});
        }
        out.routes = unordered.size();
    }
    out.flights = multi.graph.multiplicity_total();
    return out;
}

namespace {

std::int64_t round_ratio_half_away(std::int64_t numerator, std::int64_t denominator) {
    const std::int64_t sign = numerator < 0 ? -1 : 1;
    const std::int64_t magnitude = numerator < 0 ? -numerator : numerator;
    return sign * ((2 * magnitude + denominator) / (2 * denominator));
}

} // namespace

std::int64_t percent_delta(std::uint64_t before, std::uint64_t after) {
    if (before == 0) {
        throw UndefinedDeltaError("percent delta undefined for a zero baseline");
    }
    const std::int64_t diff = static_cast<std::int64_t>(after) - static_cast<std::int64_t>(before);
    return round_ratio_half_away(100 * diff, static_cast<std::int64_t>(before));
}

std::int64_t percent_delta_tenths(std::uint64_t before, std::uint64_t after) {
    if (before == 0) {
        throw UndefinedDeltaError("percent delta undefined for a zero baseline");
    }
    const std::int64_t diff = static_cast<std::int64_t>(after) - static_cast<std::int64_t>(before);
    return round_ratio_half_away(1000 * diff, static_cast<std::int64_t>(before));
}

std::int64_t share_tenths(std::uint64_t part, std::uint64_t whole) {
    if (whole == 0) {
        throw UndefinedDeltaError("share undefined for a zero total");
    }
    return round_ratio_half_away(static_cast<std::int64_t>(1000 * part), static_cast<std::int64_t>(whole));
}

std::uint64_t LabeledGraph::multiplicity_total() const {
    return std::accumulate(edges.begin(), edges.end(), std::uint64_t{0},
                           [](std::uint64_t acc, const LabeledEdge& e) { return acc + e.multiplicity; });
}

std::string vertex_label(const AspectSchema& schema, VertexId id) {
    CompositeVertex v = decode(id, schema.companion());
    std::string out;
    for (std::size_t i = 0; i < v.coords.size(); ++i) {
        if (i) out.push_back('|');
        out += schema.element_label(i, v.coords[i]);
    }
    return out;
}

namespace {

LabeledGraph label_graph_impl(const AspectSchema& schema, const std::vector<VertexId>& vertices,
                              const std::vector<std::pair<std::pair<VertexId, VertexId>, std::uint64_t>>& edges) {
    LabeledGraph out;
    out.vertices.reserve(vertices.size());
    for (VertexId v : vertices) {
        out.vertices.push_back(vertex_label(schema, v));
    }
    std::sort(out.vertices.begin(), out.vertices.end());

    std::map<std::pair<std::string, std::string>, std::uint64_t> agg;
    for (const auto& [pair, mult] : edges) {
        agg[{vertex_label(schema, pair.first), vertex_label(schema, pair.second)}] += mult;
    }
    out.edges.reserve(agg.size());
    for (const auto& [pair, mult] : agg) {
        out.edges.push_back(LabeledEdge{pair.first, pair.second, mult});
    }
    return out;
}

} // namespace

LabeledGraph label_graph(const AspectSchema& schema, const MultiDigraph& g) {
    std::vector<std::pair<std::pair<VertexId, VertexId>, std::uint64_t>> edges;
    edges.reserve(g.edge_entry_count());
    for (const GraphEdge& e : g.edges()) {
        edges.push_back({{e.from, e.to}, e.multiplicity});
    }
    return label_graph_impl(schema, g.vertices(), edges);
}

LabeledGraph label_graph(const AspectSchema& schema, const Digraph& g) {
    std::vector<std::pair<std::pair<VertexId, VertexId>, std::uint64_t>> edges;
    edges.reserve(g.edge_count());
    for (const auto& [from, to] : g.edges()) {
        edges.push_back({{from, to}, 1});
    }
    return label_graph_impl(schema, g.vertices(), edges);
}

LabeledCore label_core(const AspectSchema& schema, const CoreSubgraph& core) {
    std::vector<std::pair<std::pair<VertexId, VertexId>, std::uint64_t>> edges;
    edges.reserve(core.edges.size());
    for (const GraphEdge& e : core.edges) {
        edges.push_back({{e.from, e.to}, e.multiplicity});
    }
    return LabeledCore{core.k, label_graph_impl(schema, core.vertices, edges)};
}

CoreReport core_report(const Mag& m, std::string_view airline, std::uint32_t period, GraphMode mode,
                       std::optional<std::uint64_t> level) {
    Mag layer = flight_layer_sub_mag(m, airline, period);
    const SubDetMask mask = airport_mask(layer.schema());

    CoreReport report;
    report.row.airline = airline;
    report.row.period = period;
    report.row.mode = mode;

    CoreSubgraph core;
    AspectSchema kept_schema;
    if (mode == GraphMode::digraph) {
        SubDeterminedSimple simple = sub_determine_digraph(layer, mask);
        kept_schema = std::move(simple.schema);
        CorenessMap map = coreness(simple.graph);
        report.max_k = map.max_k();
        core = k_core(simple.graph, map, level.value_or(map.max_k()));
    } else {
        SubDeterminedMulti multi = sub_determine_multidigraph(layer, mask);
        kept_schema = std::move(multi.schema);
        CorenessMap map = coreness(multi.graph);
        report.max_k = map.max_k();
        core = k_core(multi.graph, map, level.value_or(map.max_k()));
    }

    report.row.k = core.k;
    report.row.airports = core.vertex_count;
    report.row.edges = core.edge_count;
    report.core = label_core(kept_schema, core);
    return report;
}

LabeledGraph layer_graph(const Mag& m, std::string_view airline, std::uint32_t period, GraphMode mode) {
    Mag layer = flight_layer_sub_mag(m, airline, period);
    const SubDetMask mask = airport_mask(layer.schema());
    if (mode == GraphMode::digraph) {
        SubDeterminedSimple simple = sub_determine_digraph(layer, mask);
        return label_graph(simple.schema, simple.graph);
    }
    SubDeterminedMulti multi = sub_determine_multidigraph(layer, mask);
    return label_graph(multi.schema, multi.graph);
}

bool core_equal(const LabeledCore& a, const LabeledCore& b) {
    return a.graph.vertices == b.graph.vertices && a.graph.edges == b.graph.edges;
}

namespace {

// Circular distance on the minute-of-week ring.
std::uint32_t circular_distance(std::uint32_t a, std::uint32_t b) {
    const std::uint32_t forward = (b + kMinutesPerWeek - a) % kMinutesPerWeek;
    return std::min(forward, kMinutesPerWeek - forward);
}

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

} // namespace

CodeshareResult codeshare_count(std::span<const ScheduleRecord> records, std::uint32_t period,
                                std::uint32_t tolerance_minutes) {
    std::vector<const ScheduleRecord*> in_period;
    for (const ScheduleRecord& r : records) {
        if (r.period == period) in_period.push_back(&r);
    }

    std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> by_leg;
    for (std::size_t i = 0; i < in_period.size(); ++i) {
        by_leg[{in_period[i]->origin, in_period[i]->destination}].push_back(i);
    }

    CodeshareResult result;
    for (const auto& [leg, members] : by_leg) {
        UnionFind uf(members.size());
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                const ScheduleRecord& a = *in_period[members[i]];
                const ScheduleRecord& b = *in_period[members[j]];
                if (circular_distance(a.dep_minute, b.dep_minute) <= tolerance_minutes &&
                    circular_distance(a.arr_minute, b.arr_minute) <= tolerance_minutes) {
                    uf.unite(i, j);
                }
            }
        }
        std::map<std::size_t, std::vector<std::size_t>> clusters;
        for (std::size_t i = 0; i < members.size(); ++i) {
            clusters[uf.find(i)].push_back(members[i]);
        }
        for (const auto& [root, cluster] : clusters) {
            if (cluster.size() < 2) continue;
            std::set<std::string> airlines;
            for (std::size_t idx : cluster) airlines.insert(in_period[idx]->airline);
            if (airlines.size() < 2) continue;
            CodeshareGroup group;
            for (std::size_t idx : cluster) group.flights.push_back(*in_period[idx]);
            std::sort(group.flights.begin(), group.flights.end(), [](const ScheduleRecord& a, const ScheduleRecord& b) {
                return std::tie(a.airline, a.flight_number, a.dep_minute) <
                       std::tie(b.airline, b.flight_number, b.dep_minute);
            });
            result.participating += group.flights.size();
            result.groups.push_back(std::move(group));
        }
    }
    return result;
}

std::vector<ScheduleRecord> extract_records(const Mag& m) {
    const std::size_t airport_aspect = require_aspect(m, kAirportAspect);
    const std::size_t layer_aspect = require_aspect(m, kLayerAspect);
    const std::size_t minute_aspect = require_aspect(m, kMinuteAspect);
    const std::size_t period_aspect = require_aspect(m, kPeriodAspect);

    std::vector<ScheduleRecord> out;
    for (const StoredEdge& e : m.edges()) {
        MagEdge edge = m.decode_edge(e);
        const std::string& layer = m.schema().element_label(layer_aspect, edge.from.coords[layer_aspect]);
        if (!ends_with(layer, kFlightLayerSuffix)) continue;

        ScheduleRecord r;
        r.airline = layer.substr(0, layer.size() - kFlightLayerSuffix.size());
        if (const std::string* flight = find_tag(edge.tags, "flight")) {
            r.flight_number = *flight;
        }
        r.origin = m.schema().element_label(airport_aspect, edge.from.coords[airport_aspect]);
        r.destination = m.schema().element_label(airport_aspect, edge.to.coords[airport_aspect]);
        r.dep_minute = parse_u32_label(m.schema().element_label(minute_aspect, edge.from.coords[minute_aspect]));
        r.arr_minute = parse_u32_label(m.schema().element_label(minute_aspect, edge.to.coords[minute_aspect]));
        r.period = parse_u32_label(m.schema().element_label(period_aspect, edge.from.coords[period_aspect]));
        for (std::uint32_t copy = 0; copy < edge.multiplicity; ++copy) {
            out.push_back(r);
        }
    }
    return out;
}

} // namespace magnet
