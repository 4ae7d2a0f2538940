#ifndef MAGNET_TESTS_NAIVE_KCORE_HPP
#define MAGNET_TESTS_NAIVE_KCORE_HPP

// Independent k-core oracle used to validate the bucket-peeling
// implementation. Works directly on an edge list by repeated full-scan
// deletion; deliberately shares no code with the library's decomposition.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "magnet/kcore.hpp"

namespace magnet::testing {

struct OracleEdge {
    VertexId from = 0;
    VertexId to = 0;
    std::uint64_t multiplicity = 1;
};

struct OracleGraph {
    std::vector<VertexId> vertices;
    std::vector<OracleEdge> edges;
};

inline OracleGraph oracle_graph(const MultiDigraph& g) {
    OracleGraph og;
    og.vertices = g.vertices();
    for (const GraphEdge& e : g.edges()) {
        og.edges.push_back({e.from, e.to, e.multiplicity});
    }
    return og;
}

inline OracleGraph oracle_graph(const Digraph& g) {
    OracleGraph og;
    og.vertices = g.vertices();
    for (const auto& [from, to] : g.edges()) {
        og.edges.push_back({from, to, 1});
    }
    return og;
}

// Degree of v inside the surviving set, recomputed from scratch.
inline std::uint64_t oracle_degree(const OracleGraph& g, const std::set<VertexId>& alive, VertexId v,
                                   DegreeMode mode) {
    std::uint64_t in = 0, out = 0;
    if (mode.count_multiplicity) {
        for (const OracleEdge& e : g.edges) {
            if (!alive.contains(e.from) || !alive.contains(e.to)) continue;
            if (e.from == v) out += e.multiplicity;
            if (e.to == v) in += e.multiplicity;
        }
    } else {
        std::set<std::pair<VertexId, VertexId>> seen;
        for (const OracleEdge& e : g.edges) {
            if (!alive.contains(e.from) || !alive.contains(e.to)) continue;
            if (!seen.insert({e.from, e.to}).second) continue;
            if (e.from == v) out += 1;
            if (e.to == v) in += 1;
        }
    }
    switch (mode.direction) {
    case DegreeDirection::in:
        return in;
    case DegreeDirection::out:
        return out;
    case DegreeDirection::total:
        return in + out;
    }
    return 0;
}

// Fixpoint of "delete any vertex with degree < k". When an rng is supplied
// the deletion order is randomized one vertex at a time; the surviving set
// must not depend on it.
inline std::set<VertexId> oracle_k_core_set(const OracleGraph& g, DegreeMode mode, std::uint64_t k,
                                            std::mt19937* rng = nullptr) {
    std::set<VertexId> alive(g.vertices.begin(), g.vertices.end());
    for (;;) {
        std::vector<VertexId> doomed;
        for (VertexId v : alive) {
            if (oracle_degree(g, alive, v, mode) < k) doomed.push_back(v);
        }
        if (doomed.empty()) return alive;
        if (rng) {
            std::uniform_int_distribution<std::size_t> pick(0, doomed.size() - 1);
            alive.erase(doomed[pick(*rng)]);
        } else {
            for (VertexId v : doomed) alive.erase(v);
        }
    }
}

// coreness(v) = largest k whose fixpoint still contains v.
inline std::map<VertexId, std::uint64_t> oracle_coreness(const OracleGraph& g, DegreeMode mode,
                                                         std::mt19937* rng = nullptr) {
    std::map<VertexId, std::uint64_t> result;
    for (VertexId v : g.vertices) result[v] = 0;
    for (std::uint64_t k = 1;; ++k) {
        std::set<VertexId> core = oracle_k_core_set(g, mode, k, rng);
        if (core.empty()) return result;
        for (VertexId v : core) result[v] = k;
    }
}

} // namespace magnet::testing

#endif // MAGNET_TESTS_NAIVE_KCORE_HPP
