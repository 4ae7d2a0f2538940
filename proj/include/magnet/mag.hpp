#ifndef MAGNET_MAG_HPP
#define MAGNET_MAG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "magnet/digraph.hpp"
#include "magnet/errors.hpp"

namespace magnet {

// Hash/equality pair enabling string_view lookups into string-keyed maps.
struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

template <typename T>
using StringMap = std::unordered_map<std::string, T, StringHash, std::equal_to<>>;

// One independent dimension of the modeled system: a named, ordered list of
// element labels. Element order is frozen once the schema is built.
struct Aspect {
    std::string name;
    std::vector<std::string> elements;

    friend bool operator==(const Aspect&, const Aspect&) = default;
};

// The per-aspect cardinality list. Together with the encoded directed graph
// it reconstructs a MAG's structure. Aspect 0 is the least significant digit
// of the mixed-radix vertex index.
class CompanionTuple {
public:
    CompanionTuple() = default;
    explicit CompanionTuple(std::vector<std::uint64_t> sizes);

    std::size_t aspect_count() const { return sizes_.size(); }
    const std::vector<std::uint64_t>& sizes() const { return sizes_; }
    std::uint64_t size(std::size_t aspect) const { return sizes_.at(aspect); }

    // Number of composite vertices in the full Cartesian product.
    std::uint64_t space_size() const { return space_size_; }

    friend bool operator==(const CompanionTuple&, const CompanionTuple&) = default;

private:
    std::vector<std::uint64_t> sizes_;
    std::uint64_t space_size_ = 1;
};

// One element of the Cartesian product of all aspects, as per-aspect element
// indices.
struct CompositeVertex {
    std::vector<std::uint32_t> coords;

    friend bool operator==(const CompositeVertex&, const CompositeVertex&) = default;
    friend auto operator<=>(const CompositeVertex&, const CompositeVertex&) = default;
};

// Mixed-radix bijection between composite vertices and integer indices,
// aspect 0 least significant:
//   index = coords[0] + n0 * (coords[1] + n1 * (coords[2] + ...))
std::uint64_t encode(const CompositeVertex& v, const CompanionTuple& t);
CompositeVertex decode(std::uint64_t index, const CompanionTuple& t);

// Validated collection of aspects with label -> index lookups.
class AspectSchema {
public:
    AspectSchema() = default;
    explicit AspectSchema(std::vector<Aspect> aspects);

    std::size_t aspect_count() const { return aspects_.size(); }
    const std::vector<Aspect>& aspects() const { return aspects_; }
    const Aspect& aspect(std::size_t i) const { return aspects_.at(i); }

    std::optional<std::size_t> aspect_index(std::string_view name) const;
    std::optional<std::uint32_t> element_index(std::size_t aspect, std::string_view label) const;
    const std::string& element_label(std::size_t aspect, std::uint32_t element) const;

    const CompanionTuple& companion() const { return companion_; }

    // Composite vertex from per-aspect labels, e.g. {"SDU", "gol-flight", "480", "1"}.
    CompositeVertex vertex(std::span<const std::string_view> labels) const;
    CompositeVertex vertex(std::initializer_list<std::string_view> labels) const;

    friend bool operator==(const AspectSchema& a, const AspectSchema& b) {
        return a.aspects_ == b.aspects_;
    }

private:
    std::vector<Aspect> aspects_;
    CompanionTuple companion_;
    std::vector<StringMap<std::uint32_t>> element_lookup_;
    StringMap<std::size_t> aspect_lookup_;

    void build_lookups();
};

// A MAG edge as seen by callers: endpoints in coordinate form.
struct MagEdge {
    CompositeVertex from;
    CompositeVertex to;
    std::uint32_t multiplicity = 1;
    EdgeTags tags;

    friend bool operator==(const MagEdge&, const MagEdge&) = default;
};

// Internal storage form: endpoints as encoded indices.
struct StoredEdge {
    std::uint64_t from = 0;
    std::uint64_t to = 0;
    std::uint32_t multiplicity = 1;
    EdgeTags tags;

    friend bool operator==(const StoredEdge&, const StoredEdge&) = default;
};

class MagBuilder;

// A frozen MultiAspect Graph: an aspect schema plus an edge multiset over the
// composite-vertex space. Immutable; all operations below are pure functions
// and safe for concurrent readers.
class Mag {
public:
    Mag() = default;

    const AspectSchema& schema() const { return schema_; }
    const CompanionTuple& companion() const { return schema_.companion(); }

    std::span<const StoredEdge> edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::uint64_t multiplicity_total() const;

    // Vertices registered as present without incident edges (sorted, encoded).
    const std::vector<std::uint64_t>& registered_vertices() const { return registered_; }

    // Edge endpoints plus registered vertices; sorted, unique, encoded.
    std::vector<std::uint64_t> occupied_vertices() const;

    MagEdge decode_edge(const StoredEdge& e) const;

    // Schema equality plus edge-multiset and occupied-vertex equality.
    bool structurally_equal(const Mag& other) const;

private:
    friend class MagBuilder;

    AspectSchema schema_;
    std::vector<StoredEdge> edges_;
    std::vector<std::uint64_t> registered_; // sorted, unique
};

// Single-writer construction phase of a Mag. `freeze()` produces the
// immutable object and invalidates the builder.
class MagBuilder {
public:
    explicit MagBuilder(AspectSchema schema);

    MagBuilder& add_edge(const CompositeVertex& from, const CompositeVertex& to,
                         std::uint32_t multiplicity = 1, EdgeTags tags = {});
    MagBuilder& add_edge(const MagEdge& edge);

    // Declares an isolated composite vertex as occupied.
    MagBuilder& register_vertex(const CompositeVertex& v);

    Mag freeze() &&;

private:
    Mag mag_;
    std::uint64_t check(const CompositeVertex& v) const;
};

// ---------------------------------------------------------------------------
// Operations

struct DirectedView {
    MultiDigraph graph;
    CompanionTuple companion;
};

// The directed-graph side of the MAG isomorphism: every edge becomes a
// directed edge between encoded composite indices. Only occupied vertices are
// materialized; the companion tuple preserves the full-space bijection.
DirectedView to_directed_graph(const Mag& m);

// Per-aspect element selection, by label. Entry i applies to aspect i and
// must be nonempty and drawn from the schema.
using ElementSelection = std::vector<std::vector<std::string>>;

// Induced sub-MAG: keeps exactly the edges whose endpoints fall entirely
// within the selection; the result schema keeps selected elements in schema
// order. Multiplicities and tags are preserved.
Mag sub_mag(const Mag& m, const ElementSelection& selection);

// Convenience form: aspects not named keep all their elements.
Mag sub_mag_by_name(const Mag& m, const std::map<std::string, std::vector<std::string>>& by_aspect_name);

// Choice of aspects to retain in a sub-determination. Proper means at least
// one aspect kept and at least one dropped.
struct SubDetMask {
    std::vector<bool> keep;

    std::size_t kept_count() const;
    bool is_proper() const;

    // Mask keeping exactly the named aspects.
    static SubDetMask keep_named(const AspectSchema& schema, std::span<const std::string> names);

    friend bool operator==(const SubDetMask&, const SubDetMask&) = default;
};

// All 2^p - 2 proper masks for p >= 2, in ascending bitmask order (bit i =
// keep aspect i). Returns an empty sequence for p < 2.
std::vector<SubDetMask> enumerate_sub_determinations(std::size_t aspect_count);

enum class SelfLoops { drop, keep };

// Aggregation over the kept aspects, as a MAG: every edge's endpoints are
// projected onto the kept aspects; each source edge survives individually
// with its multiplicity and tags. Edges whose projected endpoints coincide
// are dropped under SelfLoops::drop. The occupied vertex set is the
// projection of the source's occupied vertex set.
Mag sub_determine_mag(const Mag& m, const SubDetMask& mask, SelfLoops self_loops = SelfLoops::drop);

struct SubDeterminedMulti {
    AspectSchema schema; // kept aspects, full element lists
    MultiDigraph graph;  // vertex ids encoded over schema.companion()
    std::uint64_t dropped_self_loops = 0;
};

struct SubDeterminedSimple {
    AspectSchema schema;
    Digraph graph;
    std::uint64_t dropped_self_loops = 0;
};

// Flight view: one projected edge per source edge (parallel edges preserved).
SubDeterminedMulti sub_determine_multidigraph(const Mag& m, const SubDetMask& mask,
                                              SelfLoops self_loops = SelfLoops::drop);

// Route view: projected parallel edges collapse to a single edge with pure
// existence semantics; tags are discarded.
SubDeterminedSimple sub_determine_digraph(const Mag& m, const SubDetMask& mask,
                                          SelfLoops self_loops = SelfLoops::drop);

} // namespace magnet

#endif // MAGNET_MAG_HPP
