#ifndef MAGNET_KCORE_HPP
#define MAGNET_KCORE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "magnet/digraph.hpp"

namespace magnet {

enum class DegreeDirection { total, in, out };

// How vertex connectivity is counted during peeling. With
// count_multiplicity, every parallel edge (and every unit of edge
// multiplicity) contributes to degree; without it a parallel bundle counts
// once per direction. Has no effect on Digraph inputs.
struct DegreeMode {
    DegreeDirection direction = DegreeDirection::total;
    bool count_multiplicity = true;
};

// Vertex -> coreness, plus the largest k whose k-core is nonempty.
// coreness(v) >= k exactly when v belongs to the k-core.
class CorenessMap {
public:
    CorenessMap() = default;
    CorenessMap(std::vector<VertexId> vertices, std::vector<std::uint64_t> coreness);

    std::uint64_t max_k() const { return max_k_; }
    std::size_t size() const { return vertices_.size(); }

    // Throws NotFoundError for a vertex absent from the decomposed graph.
    std::uint64_t coreness_of(VertexId v) const;

    const std::vector<VertexId>& vertices() const { return vertices_; } // sorted
    const std::vector<std::uint64_t>& coreness() const { return coreness_; } // parallel to vertices()

    std::vector<VertexId> vertices_with_coreness_at_least(std::uint64_t k) const;

private:
    std::vector<VertexId> vertices_;
    std::vector<std::uint64_t> coreness_;
    std::uint64_t max_k_ = 0;
};

// Induced subgraph at core level k: every member vertex has degree >= k
// within it under the chosen DegreeMode, and no outside vertex could join
// without breaking that bound.
struct CoreSubgraph {
    std::uint64_t k = 0;
    std::vector<VertexId> vertices;  // sorted
    std::vector<GraphEdge> edges;    // induced; Digraph inputs yield multiplicity-1 entries
    std::uint64_t vertex_count = 0;
    std::uint64_t edge_count = 0;    // multiplicity-weighted
};

// Bucket peeling (repeated minimum-degree deletion) in O(V + E) time, where
// multiplicities expand E. Empty graph yields an empty map with max_k = 0.
CorenessMap coreness(const MultiDigraph& g, DegreeMode mode = {});
CorenessMap coreness(const Digraph& g, DegreeMode mode = {});

// Induced subgraph on vertices with coreness >= k; empty when k > max_k.
CoreSubgraph k_core(const MultiDigraph& g, DegreeMode mode, std::uint64_t k);
CoreSubgraph k_core(const Digraph& g, DegreeMode mode, std::uint64_t k);

// Same, reusing an already computed decomposition of g.
CoreSubgraph k_core(const MultiDigraph& g, const CorenessMap& map, std::uint64_t k);
CoreSubgraph k_core(const Digraph& g, const CorenessMap& map, std::uint64_t k);

// The k-core at k = max_k.
CoreSubgraph max_core(const MultiDigraph& g, DegreeMode mode = {});
CoreSubgraph max_core(const Digraph& g, DegreeMode mode = {});

// Vertex-set and edge-multiset equality; parallel entries of the same vertex
// pair are aggregated before comparison, tags are ignored.
bool core_subgraph_equal(const CoreSubgraph& a, const CoreSubgraph& b);

} // namespace magnet

#endif // MAGNET_KCORE_HPP
