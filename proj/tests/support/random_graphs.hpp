#ifndef MAGNET_TESTS_RANDOM_GRAPHS_HPP
#define MAGNET_TESTS_RANDOM_GRAPHS_HPP

#include <random>
#include <string>
#include <vector>

#include "magnet/digraph.hpp"
#include "magnet/mag.hpp"

namespace magnet::testing {

// Random multidigraph with up to max_vertices vertices and max_edges edge
// entries (self-loops allowed). Vertex ids use a random stride so id-to-index
// mapping gets exercised.
inline MultiDigraph random_multidigraph(std::mt19937& rng, std::size_t max_vertices, std::size_t max_edges,
                                        std::uint32_t max_multiplicity) {
    std::uniform_int_distribution<std::size_t> nv(1, max_vertices);
    const std::size_t n = nv(rng);
    const std::uint64_t stride = (rng() % 2 == 0) ? 1 : 17;

    std::vector<VertexId> vertices;
    vertices.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        vertices.push_back(static_cast<VertexId>(i) * stride + 3);
    }

    std::uniform_int_distribution<std::size_t> ne(0, max_edges);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<std::uint32_t> mult(1, max_multiplicity);
    std::vector<GraphEdge> edges;
    const std::size_t e = ne(rng);
    edges.reserve(e);
    for (std::size_t i = 0; i < e; ++i) {
        edges.push_back(GraphEdge{vertices[pick(rng)], vertices[pick(rng)], mult(rng), {}});
    }
    return MultiDigraph(std::move(vertices), std::move(edges));
}

// Random Mag over `aspects` aspects of 2..4 elements each, with multiplicity
// 1..3 edges and a few registered isolated vertices.
inline Mag random_mag(std::mt19937& rng, std::size_t aspects, std::size_t max_edges) {
    std::uniform_int_distribution<std::uint32_t> n_elements(2, 4);
    std::vector<Aspect> schema_aspects;
    for (std::size_t a = 0; a < aspects; ++a) {
        Aspect aspect;
        aspect.name = "a" + std::to_string(a);
        const std::uint32_t n = n_elements(rng);
        for (std::uint32_t e = 0; e < n; ++e) {
            aspect.elements.push_back("a" + std::to_string(a) + "e" + std::to_string(e));
        }
        schema_aspects.push_back(std::move(aspect));
    }
    AspectSchema schema{schema_aspects};

    auto random_vertex = [&]() {
        CompositeVertex v;
        for (std::size_t a = 0; a < aspects; ++a) {
            std::uniform_int_distribution<std::uint32_t> coord(
                0, static_cast<std::uint32_t>(schema.aspect(a).elements.size() - 1));
            v.coords.push_back(coord(rng));
        }
        return v;
    };

    MagBuilder builder{schema};
    std::uniform_int_distribution<std::size_t> ne(1, max_edges);
    std::uniform_int_distribution<std::uint32_t> mult(1, 3);
    const std::size_t e = ne(rng);
    for (std::size_t i = 0; i < e; ++i) {
        EdgeTags tags;
        if (rng() % 4 == 0) {
            tags.emplace_back("id", std::to_string(i));
        }
        builder.add_edge(random_vertex(), random_vertex(), mult(rng), std::move(tags));
    }
    for (int i = 0; i < 3; ++i) {
        if (rng() % 2 == 0) builder.register_vertex(random_vertex());
    }
    return std::move(builder).freeze();
}

} // namespace magnet::testing

#endif // MAGNET_TESTS_RANDOM_GRAPHS_HPP
