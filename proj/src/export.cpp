#include "magnet/export.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

#include "magnet/errors.hpp"

namespace magnet {

using ordered_json = nlohmann::ordered_json;

std::string export_geojson(const LabeledGraph& graph, const AirportRegistry& registry, GraphMode mode) {
    std::string missing;
    for (const std::string& code : graph.vertices) {
        if (!registry.contains(code)) {
            if (!missing.empty()) missing += ", ";
            missing += code;
        }
    }
    if (!missing.empty()) {
        throw UnresolvedAirportError("airports missing from the registry: " + missing);
    }

    // In-core total degree per airport, multiplicity-weighted.
    std::map<std::string, std::uint64_t> degree;
    for (const std::string& code : graph.vertices) degree[code] = 0;
    for (const LabeledEdge& e : graph.edges) {
        degree[e.from] += e.multiplicity;
        degree[e.to] += e.multiplicity;
    }

    ordered_json features = ordered_json::array();
    for (const std::string& code : graph.vertices) { // sorted by construction
        const AirportInfo* info = registry.find(code);
        ordered_json feature;
        feature["type"] = "Feature";
        feature["geometry"] = {{"type", "Point"}, {"coordinates", {info->longitude, info->latitude}}};
        feature["properties"] = {{"iata", code}, {"degree", degree[code]}};
        features.push_back(std::move(feature));
    }
    for (const LabeledEdge& e : graph.edges) { // sorted by (from, to) by construction
        const AirportInfo* a = registry.find(e.from);
        const AirportInfo* b = registry.find(e.to);
        ordered_json feature;
        feature["type"] = "Feature";
        feature["geometry"] = {{"type", "LineString"},
                               {"coordinates", {{a->longitude, a->latitude}, {b->longitude, b->latitude}}}};
        ordered_json props = {{"from", e.from}, {"to", e.to}};
        if (mode == GraphMode::multidigraph) {
            props["multiplicity"] = e.multiplicity;
        }
        feature["properties"] = std::move(props);
        features.push_back(std::move(feature));
    }

    ordered_json doc;
    doc["type"] = "FeatureCollection";
    doc["features"] = std::move(features);
    return doc.dump(2) + "\n";
}

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

} // namespace

std::string export_dot(const LabeledGraph& graph, const DotOptions& options) {
    std::ostringstream out;
    out << "digraph g {\n";
    for (const std::string& v : graph.vertices) {
        out << "  " << dot_quote(v) << ";\n";
    }
    for (const LabeledEdge& e : graph.edges) {
        if (options.collapse_parallel) {
            out << "  " << dot_quote(e.from) << " -> " << dot_quote(e.to);
            if (e.multiplicity != 1) {
                out << " [label=" << e.multiplicity << "]";
            }
            out << ";\n";
        } else {
            for (std::uint64_t i = 0; i < e.multiplicity; ++i) {
                out << "  " << dot_quote(e.from) << " -> " << dot_quote(e.to) << ";\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace magnet
