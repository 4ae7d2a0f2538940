#include "magnet/kcore.hpp"

#include <algorithm>
#include <tuple>

#include "magnet/errors.hpp"

namespace magnet {

CorenessMap::CorenessMap(std::vector<VertexId> vertices, std::vector<std::uint64_t> coreness)
    : vertices_(std::move(vertices)), coreness_(std::move(coreness)) {
    for (std::uint64_t c : coreness_) {
        max_k_ = std::max(max_k_, c);
    }
}

std::uint64_t CorenessMap::coreness_of(VertexId v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) {
        throw NotFoundError("vertex " + std::to_string(v) + " not present in decomposition");
    }
    return coreness_[static_cast<std::size_t>(it - vertices_.begin())];
}

std::vector<VertexId> CorenessMap::vertices_with_coreness_at_least(std::uint64_t k) const {
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (coreness_[i] >= k) out.push_back(vertices_[i]);
    }
    return out;
}

namespace {

// Weighted directed pair after aggregating parallel entries.
struct PairWeight {
    std::uint32_t u; // internal index
    std::uint32_t v;
    std::uint64_t weight;
};

// Degree bookkeeping normalized from either graph type: initial degrees plus,
// per vertex, the list of (neighbor, weight) degree reductions its removal
// causes. Self-loops contribute to a vertex's own degree only.
struct PeelInput {
    std::vector<std::uint64_t> degree;
    std::vector<std::uint32_t> impact_offset; // CSR offsets, size n+1
    std::vector<std::uint32_t> impact_vertex;
    std::vector<std::uint64_t> impact_weight;
};

std::uint32_t index_of(const std::vector<VertexId>& sorted_ids, VertexId id) {
    auto it = std::lower_bound(sorted_ids.begin(), sorted_ids.end(), id);
    return static_cast<std::uint32_t>(it - sorted_ids.begin());
}

// Aggregates raw directed edges into per-pair weights under the degree mode.
std::vector<PairWeight> aggregate_pairs(std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>>& raw,
                                        bool count_multiplicity) {
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    std::vector<PairWeight> pairs;
    for (std::size_t i = 0; i < raw.size();) {
        std::size_t j = i;
        std::uint64_t sum = 0;
        while (j < raw.size() && std::get<0>(raw[j]) == std::get<0>(raw[i]) &&
               std::get<1>(raw[j]) == std::get<1>(raw[i])) {
            sum += std::get<2>(raw[j]);
            ++j;
        }
        pairs.push_back(PairWeight{std::get<0>(raw[i]), std::get<1>(raw[i]), count_multiplicity ? sum : 1});
        i = j;
    }
    return pairs;
}

PeelInput build_peel_input(std::size_t n, std::vector<PairWeight> pairs, DegreeMode mode) {
    PeelInput in;
    in.degree.assign(n, 0);

    // Count impact entries per vertex first to lay out the CSR arrays.
    std::vector<std::uint32_t> counts(n, 0);
    for (const PairWeight& p : pairs) {
        switch (mode.direction) {
        case DegreeDirection::in:
            in.degree[p.v] += p.weight;
            break;
        case DegreeDirection::out:
            in.degree[p.u] += p.weight;
            break;
        case DegreeDirection::total:
            in.degree[p.u] += p.weight;
            in.degree[p.v] += p.weight;
            break;
        }
        if (p.u == p.v) continue;
        switch (mode.direction) {
        case DegreeDirection::in:
            ++counts[p.u]; // removing u lowers in-degree of v
            break;
        case DegreeDirection::out:
            ++counts[p.v]; // removing v lowers out-degree of u
            break;
        case DegreeDirection::total:
            ++counts[p.u];
            ++counts[p.v];
            break;
        }
    }

    in.impact_offset.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        in.impact_offset[i + 1] = in.impact_offset[i] + counts[i];
    }
    in.impact_vertex.resize(in.impact_offset[n]);
    in.impact_weight.resize(in.impact_offset[n]);

    std::vector<std::uint32_t> cursor(in.impact_offset.begin(), in.impact_offset.end() - 1);
    auto put = [&](std::uint32_t remover, std::uint32_t affected, std::uint64_t w) {
        in.impact_vertex[cursor[remover]] = affected;
        in.impact_weight[cursor[remover]] = w;
        ++cursor[remover];
    };
    for (const PairWeight& p : pairs) {
        if (p.u == p.v) continue;
        switch (mode.direction) {
        case DegreeDirection::in:
            put(p.u, p.v, p.weight);
            break;
        case DegreeDirection::out:
            put(p.v, p.u, p.weight);
            break;
        case DegreeDirection::total:
            put(p.u, p.v, p.weight);
            put(p.v, p.u, p.weight);
            break;
        }
    }
    return in;
}

// Bucket peeling over exact degrees. Unit decrements realize multiplicity
// weights, so the run time is O(V + E) with E expanded by multiplicity.
std::vector<std::uint64_t> peel(PeelInput in) {
    const std::size_t n = in.degree.size();
    std::vector<std::uint64_t>& deg = in.degree;
    if (n == 0) return {};

    std::uint64_t md = 0;
    for (std::uint64_t d : deg) md = std::max(md, d);
    if (md > 200'000'000ULL) {
        throw Error("maximum degree " + std::to_string(md) + " too large for bucket peeling");
    }

    // Counting sort into vert/pos with bin[d] = start of the degree-d run.
    std::vector<std::uint64_t> bin(md + 2, 0);
    for (std::uint64_t d : deg) ++bin[d];
    std::uint64_t start = 0;
    for (std::uint64_t d = 0; d <= md; ++d) {
        std::uint64_t count = bin[d];
        bin[d] = start;
        start += count;
    }
    std::vector<std::uint32_t> vert(n), pos(n);
    {
        std::vector<std::uint64_t> cursor(bin.begin(), bin.end());
        for (std::uint32_t v = 0; v < n; ++v) {
            pos[v] = static_cast<std::uint32_t>(cursor[deg[v]]++);
            vert[pos[v]] = v;
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t v = vert[i];
        for (std::uint32_t e = in.impact_offset[v]; e < in.impact_offset[v + 1]; ++e) {
            const std::uint32_t u = in.impact_vertex[e];
            std::uint64_t times = in.impact_weight[e];
            while (times-- > 0 && deg[u] > deg[v]) {
                const std::uint64_t du = deg[u];
                const std::uint32_t pu = pos[u];
                const std::uint64_t pw = bin[du];
                const std::uint32_t w = vert[pw];
                if (u != w) {
                    vert[pu] = w;
                    vert[pw] = u;
                    pos[u] = static_cast<std::uint32_t>(pw);
                    pos[w] = pu;
                }
                ++bin[du];
                --deg[u];
            }
        }
    }
    return deg; // final degrees are the corenesses
}

CorenessMap run(const std::vector<VertexId>& vertices,
                std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>> raw, DegreeMode mode) {
    std::vector<PairWeight> pairs = aggregate_pairs(raw, mode.count_multiplicity);
    std::vector<std::uint64_t> result = peel(build_peel_input(vertices.size(), std::move(pairs), mode));
    return CorenessMap(vertices, std::move(result));
}

} // namespace

CorenessMap coreness(const MultiDigraph& g, DegreeMode mode) {
    const std::vector<VertexId>& ids = g.vertices();
    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>> raw;
    raw.reserve(g.edge_entry_count());
    for (const GraphEdge& e : g.edges()) {
        raw.emplace_back(index_of(ids, e.from), index_of(ids, e.to), e.multiplicity);
    }
    return run(ids, std::move(raw), mode);
}

CorenessMap coreness(const Digraph& g, DegreeMode mode) {
    const std::vector<VertexId>& ids = g.vertices();
    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>> raw;
    raw.reserve(g.edge_count());
    for (const auto& [from, to] : g.edges()) {
        raw.emplace_back(index_of(ids, from), index_of(ids, to), 1);
    }
    mode.count_multiplicity = true; // no parallel edges exist
    return run(ids, std::move(raw), mode);
}

namespace {

template <typename EdgeRange, typename MakeEdge>
CoreSubgraph induce(const CorenessMap& map, std::uint64_t k, const EdgeRange& edges, MakeEdge make_edge) {
    CoreSubgraph core;
    core.k = k;
    core.vertices = map.vertices_with_coreness_at_least(k);
    auto member = [&](VertexId v) {
        return std::binary_search(core.vertices.begin(), core.vertices.end(), v);
    };
    for (const auto& e : edges) {
        GraphEdge ge = make_edge(e);
        if (member(ge.from) && member(ge.to)) {
            core.edge_count += ge.multiplicity;
            core.edges.push_back(std::move(ge));
        }
    }
    core.vertex_count = core.vertices.size();
    return core;
}

} // namespace

CoreSubgraph k_core(const MultiDigraph& g, DegreeMode mode, std::uint64_t k) {
    return induce(coreness(g, mode), k, g.edges(), [](const GraphEdge& e) { return e; });
}

CoreSubgraph k_core(const Digraph& g, DegreeMode mode, std::uint64_t k) {
    return induce(coreness(g, mode), k, g.edges(),
                  [](const Digraph::Edge& e) { return GraphEdge{e.first, e.second, 1, {}}; });
}

CoreSubgraph k_core(const MultiDigraph& g, const CorenessMap& map, std::uint64_t k) {
    return induce(map, k, g.edges(), [](const GraphEdge& e) { return e; });
}

CoreSubgraph k_core(const Digraph& g, const CorenessMap& map, std::uint64_t k) {
    return induce(map, k, g.edges(), [](const Digraph::Edge& e) { return GraphEdge{e.first, e.second, 1, {}}; });
}

CoreSubgraph max_core(const MultiDigraph& g, DegreeMode mode) {
    CorenessMap map = coreness(g, mode);
    return induce(map, map.max_k(), g.edges(), [](const GraphEdge& e) { return e; });
}

CoreSubgraph max_core(const Digraph& g, DegreeMode mode) {
    CorenessMap map = coreness(g, mode);
    return induce(map, map.max_k(), g.edges(),
                  [](const Digraph::Edge& e) { return GraphEdge{e.first, e.second, 1, {}}; });
}

bool core_subgraph_equal(const CoreSubgraph& a, const CoreSubgraph& b) {
    if (a.vertices != b.vertices) return false;
    auto aggregate = [](const CoreSubgraph& c) {
        std::vector<std::tuple<VertexId, VertexId, std::uint64_t>> agg;
        agg.reserve(c.edges.size());
        for (const GraphEdge& e : c.edges) {
            agg.emplace_back(e.from, e.to, e.multiplicity);
        }
        std::sort(agg.begin(), agg.end());
        std::vector<std::tuple<VertexId, VertexId, std::uint64_t>> merged;
        for (std::size_t i = 0; i < agg.size();) {
            std::size_t j = i;
            std::uint64_t sum = 0;
            while (j < agg.size() && std::get<0>(agg[j]) == std::get<0>(agg[i]) &&
                   std::get<1>(agg[j]) == std::get<1>(agg[i])) {
                sum += std::get<2>(agg[j]);
                ++j;
            }
            merged.emplace_back(std::get<0>(agg[i]), std::get<1>(agg[i]), sum);
            i = j;
        }
        return merged;
    };
    return aggregate(a) == aggregate(b);
}

} // namespace magnet
