#include "magnet/digraph.hpp"

#include <algorithm>
#include <numeric>

namespace magnet {

EdgeTags make_tags(EdgeTags tags) {
    std::sort(tags.begin(), tags.end());
    return tags;
}

const std::string* find_tag(const EdgeTags& tags, std::string_view key) {
    for (const auto& [k, v] : tags) {
        if (k == key) return &v;
    }
    return nullptr;
}

namespace {

void sort_unique(std::vector<VertexId>& ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

} // namespace

MultiDigraph::MultiDigraph(std::vector<VertexId> vertices, std::vector<GraphEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    vertices_.reserve(vertices_.size() + 2 * edges_.size());
    for (const GraphEdge& e : edges_) {
        vertices_.push_back(e.from);
        vertices_.push_back(e.to);
    }
    sort_unique(vertices_);
}

std::uint64_t MultiDigraph::multiplicity_total() const {
    return std::accumulate(edges_.begin(), edges_.end(), std::uint64_t{0},
                           [](std::uint64_t acc, const GraphEdge& e) { return acc + e.multiplicity; });
}

bool MultiDigraph::has_vertex(VertexId v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

Digraph::Digraph(std::vector<VertexId> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    vertices_.reserve(vertices_.size() + 2 * edges_.size());
    for (const Edge& e : edges_) {
        vertices_.push_back(e.first);
        vertices_.push_back(e.second);
    }
    sort_unique(vertices_);
}

bool Digraph::has_vertex(VertexId v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Digraph::has_edge(VertexId from, VertexId to) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

} // namespace magnet
