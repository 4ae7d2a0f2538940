#ifndef MAGNET_EXPORT_HPP
#define MAGNET_EXPORT_HPP

#include <string>

#include "magnet/analysis.hpp"
#include "magnet/ingest.hpp"

namespace magnet {

// GeoJSON FeatureCollection: one Point per airport (properties: iata,
// degree) and one LineString per distinct directed edge ([lon, lat]
// endpoints; multiplicity property in multidigraph mode). Features are
// ordered by iata, then by endpoint pair. Throws UnresolvedAirportError
// listing every vertex missing from the registry.
std::string export_geojson(const LabeledGraph& graph, const AirportRegistry& registry, GraphMode mode);

struct DotOptions {
    // One edge statement per unit of multiplicity when false; a single
    // statement with a multiplicity label when true.
    bool collapse_parallel = false;
};

// DOT digraph document with quoted vertex labels as node ids, node and edge
// statements sorted.
std::string export_dot(const LabeledGraph& graph, const DotOptions& options = {});

} // namespace magnet

#endif // MAGNET_EXPORT_HPP
