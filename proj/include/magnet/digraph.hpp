#ifndef MAGNET_DIGRAPH_HPP
#define MAGNET_DIGRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace magnet {

using VertexId = std::uint64_t;

// Sorted key/value pairs carried by an edge (provenance such as flight numbers).
using EdgeTags = std::vector<std::pair<std::string, std::string>>;

// Returns tags sorted by key so edge comparisons are order-insensitive.
EdgeTags make_tags(EdgeTags tags);

// Looks up a tag value; returns nullptr when the key is absent.
const std::string* find_tag(const EdgeTags& tags, std::string_view key);

struct GraphEdge {
    VertexId from = 0;
    VertexId to = 0;
    std::uint32_t multiplicity = 1;
    EdgeTags tags;

    friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

// Directed graph over integer vertex ids; parallel edges are kept as
// individual entries, each with its own multiplicity and tags.
// Immutable once constructed.
class MultiDigraph {
public:
    MultiDigraph() = default;

    // `vertices` may list isolated vertices; edge endpoints are added
    // automatically. Vertex ids are deduplicated and sorted.
    MultiDigraph(std::vector<VertexId> vertices, std::vector<GraphEdge> edges);

    const std::vector<VertexId>& vertices() const { return vertices_; }
    std::span<const GraphEdge> edges() const { return edges_; }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_entry_count() const { return edges_.size(); }

    // Sum of edge multiplicities; the flight-count view of the edge set.
    std::uint64_t multiplicity_total() const;

    bool has_vertex(VertexId v) const;

private:
    std::vector<VertexId> vertices_; // sorted, unique
    std::vector<GraphEdge> edges_;
};

// Directed graph with at most one edge per ordered vertex pair and pure
// existence semantics (no multiplicity, no tags). Immutable once constructed.
class Digraph {
public:
    using Edge = std::pair<VertexId, VertexId>;

    Digraph() = default;

    // Duplicate edges collapse to one; endpoints join the vertex set.
    Digraph(std::vector<VertexId> vertices, std::vector<Edge> edges);

    const std::vector<VertexId>& vertices() const { return vertices_; }
    std::span<const Edge> edges() const { return edges_; }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_vertex(VertexId v) const;
    bool has_edge(VertexId from, VertexId to) const;

private:
    std::vector<VertexId> vertices_; // sorted, unique
    std::vector<Edge> edges_;        // sorted, unique
};

} // namespace magnet

#endif // MAGNET_DIGRAPH_HPP
