#include "magnet/mag.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace magnet {

namespace {

std::string coords_to_string(const CompositeVertex& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.coords.size(); ++i) {
        if (i) os << ",";
        os << v.coords[i];
    }
    os << ")";
    return os.str();
}

} // namespace

CompanionTuple::CompanionTuple(std::vector<std::uint64_t> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) {
        throw SchemaViolationError("companion tuple needs at least one aspect");
    }
    space_size_ = 1;
    for (std::uint64_t n : sizes_) {
        if (n == 0) {
            throw SchemaViolationError("companion tuple sizes must be positive");
        }
        if (space_size_ > std::numeric_limits<std::uint64_t>::max() / n) {
            throw SchemaViolationError("composite-vertex space size overflows 64 bits");
        }
        space_size_ *= n;
    }
}

std::uint64_t encode(const CompositeVertex& v, const CompanionTuple& t) {
    if (v.coords.size() != t.aspect_count()) {
        throw SchemaViolationError("coordinate count does not match aspect count");
    }
    std::uint64_t index = 0;
    for (std::size_t i = t.aspect_count(); i-- > 0;) {
        if (v.coords[i] >= t.sizes()[i]) {
            throw SchemaViolationError("coordinate out of range in aspect " + std::to_string(i) +
                                       ": " + coords_to_string(v));
        }
        index = index * t.sizes()[i] + v.coords[i];
    }
    return index;
}

CompositeVertex decode(std::uint64_t index, const CompanionTuple& t) {
    if (t.aspect_count() == 0) {
        throw SchemaViolationError("cannot decode against an empty companion tuple");
    }
    if (index >= t.space_size()) {
        throw SchemaViolationError("index " + std::to_string(index) + " outside composite-vertex space of size " +
                                   std::to_string(t.space_size()));
    }
    CompositeVertex v;
    v.coords.resize(t.aspect_count());
    for (std::size_t i = 0; i < t.aspect_count(); ++i) {
        v.coords[i] = static_cast<std::uint32_t>(index % t.sizes()[i]);
        index /= t.sizes()[i];
    }
    return v;
}

AspectSchema::AspectSchema(std::vector<Aspect> aspects) : aspects_(std::move(aspects)) {
    if (aspects_.empty()) {
        throw SchemaViolationError("schema needs at least one aspect");
    }
    std::vector<std::uint64_t> sizes;
    sizes.reserve(aspects_.size());
    for (const Aspect& a : aspects_) {
        if (a.name.empty()) {
            throw SchemaViolationError("aspect names must be nonempty");
        }
        if (a.elements.empty()) {
            throw SchemaViolationError("aspect '" + a.name + "' has no elements");
        }
        if (a.elements.size() > std::numeric_limits<std::uint32_t>::max()) {
            throw SchemaViolationError("aspect '" + a.name + "' has too many elements");
        }
        sizes.push_back(a.elements.size());
    }
    companion_ = CompanionTuple(std::move(sizes));
    build_lookups();
}

void AspectSchema::build_lookups() {
    aspect_lookup_.clear();
    element_lookup_.clear();
    element_lookup_.resize(aspects_.size());
    for (std::size_t i = 0; i < aspects_.size(); ++i) {
        if (!aspect_lookup_.emplace(aspects_[i].name, i).second) {
            throw SchemaViolationError("duplicate aspect name '" + aspects_[i].name + "'");
        }
        auto& lookup = element_lookup_[i];
        lookup.reserve(aspects_[i].elements.size());
        for (std::uint32_t j = 0; j < aspects_[i].elements.size(); ++j) {
            if (!lookup.emplace(aspects_[i].elements[j], j).second) {
                throw SchemaViolationError("duplicate element '" + aspects_[i].elements[j] + "' in aspect '" +
                                           aspects_[i].name + "'");
            }
        }
    }
}

std::optional<std::size_t> AspectSchema::aspect_index(std::string_view name) const {
    auto it = aspect_lookup_.find(name);
    if (it == aspect_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::uint32_t> AspectSchema::element_index(std::size_t aspect, std::string_view label) const {
    if (aspect >= aspects_.size()) return std::nullopt;
    const auto& lookup = element_lookup_[aspect];
    auto it = lookup.find(label);
    if (it == lookup.end()) return std::nullopt;
    return it->second;
}

const std::string& AspectSchema::element_label(std::size_t aspect, std::uint32_t element) const {
    return aspects_.at(aspect).elements.at(element);
}

CompositeVertex AspectSchema::vertex(std::span<const std::string_view> labels) const {
    if (labels.size() != aspects_.size()) {
        throw SchemaViolationError("label count does not match aspect count");
    }
    CompositeVertex v;
    v.coords.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto idx = element_index(i, labels[i]);
        if (!idx) {
            throw SchemaViolationError("unknown element '" + std::string(labels[i]) + "' in aspect '" +
                                       aspects_[i].name + "'");
        }
        v.coords.push_back(*idx);
    }
    return v;
}

CompositeVertex AspectSchema::vertex(std::initializer_list<std::string_view> labels) const {
    std::vector<std::string_view> views(labels);
    return vertex(std::span<const std::string_view>(views));
}

std::uint64_t Mag::multiplicity_total() const {
    return std::accumulate(edges_.begin(), edges_.end(), std::uint64_t{0},
                           [](std::uint64_t acc, const StoredEdge& e) { return acc + e.multiplicity; });
}

std::vector<std::uint64_t> Mag::occupied_vertices() const {
    std::vector<std::uint64_t> out = registered_;
    out.reserve(out.size() + 2 * edges_.size());
    for (const StoredEdge& e : edges_) {
        out.push_back(e.from);
        out.push_back(e.to);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

MagEdge Mag::decode_edge(const StoredEdge& e) const {
    return MagEdge{decode(e.from, companion()), decode(e.to, companion()), e.multiplicity, e.tags};
}

bool Mag::structurally_equal(const Mag& other) const {
    if (!(schema_ == other.schema_)) return false;
    if (edges_.size() != other.edges_.size()) return false;
    auto key = [](const StoredEdge& e) { return std::tie(e.from, e.to, e.multiplicity, e.tags); };
    auto sorted = [&](const std::vector<StoredEdge>& edges) {
        std::vector<StoredEdge> copy = edges;
        std::sort(copy.begin(), copy.end(), [&](const StoredEdge& a, const StoredEdge& b) { return key(a) < key(b); });
        return copy;
    };
    if (sorted(edges_) != sorted(other.edges_)) return false;
    return occupied_vertices() == other.occupied_vertices();
}

MagBuilder::MagBuilder(AspectSchema schema) {
    mag_.schema_ = std::move(schema);
}

std::uint64_t MagBuilder::check(const CompositeVertex& v) const {
    return encode(v, mag_.schema_.companion());
}

MagBuilder& MagBuilder::add_edge(const CompositeVertex& from, const CompositeVertex& to,
                                 std::uint32_t multiplicity, EdgeTags tags) {
    if (multiplicity == 0) {
        throw SchemaViolationError("edge multiplicity must be positive");
    }
    StoredEdge e;
    e.from = check(from);
    e.to = check(to);
    e.multiplicity = multiplicity;
    e.tags = make_tags(std::move(tags));
    mag_.edges_.push_back(std::move(e));
    return *this;
}

MagBuilder& MagBuilder::add_edge(const MagEdge& edge) {
    return add_edge(edge.from, edge.to, edge.multiplicity, edge.tags);
}

MagBuilder& MagBuilder::register_vertex(const CompositeVertex& v) {
    mag_.registered_.push_back(check(v));
    return *this;
}

Mag MagBuilder::freeze() && {
    std::sort(mag_.registered_.begin(), mag_.registered_.end());
    mag_.registered_.erase(std::unique(mag_.registered_.begin(), mag_.registered_.end()), mag_.registered_.end());
    return std::move(mag_);
}

DirectedView to_directed_graph(const Mag& m) {
    std::vector<GraphEdge> edges;
    edges.reserve(m.edge_count());
    for (const StoredEdge& e : m.edges()) {
        edges.push_back(GraphEdge{e.from, e.to, e.multiplicity, e.tags});
    }
    return DirectedView{MultiDigraph(m.occupied_vertices(), std::move(edges)), m.companion()};
}

Mag sub_mag(const Mag& m, const ElementSelection& selection) {
    const AspectSchema& schema = m.schema();
    const std::size_t p = schema.aspect_count();
    if (selection.size() != p) {
        throw InvalidSelectorError("selector must cover all " + std::to_string(p) + " aspects");
    }

    // Per aspect: old element index -> new element index, or -1 when dropped.
    std::vector<std::vector<std::int64_t>> remap(p);
    std::vector<Aspect> kept_aspects(p);
    for (std::size_t i = 0; i < p; ++i) {
        if (selection[i].empty()) {
            throw InvalidSelectorError("empty selection for aspect '" + schema.aspect(i).name + "'");
        }
        std::set<std::uint32_t> kept;
        for (const std::string& label : selection[i]) {
            auto idx = schema.element_index(i, label);
            if (!idx) {
                throw InvalidSelectorError("unknown element '" + label + "' in aspect '" + schema.aspect(i).name +
                                           "'");
            }
            kept.insert(*idx);
        }
        remap[i].assign(schema.aspect(i).elements.size(), -1);
        kept_aspects[i].name = schema.aspect(i).name;
        std::int64_t next = 0;
        for (std::uint32_t old : kept) { // ascending: schema order preserved
            remap[i][old] = next++;
            kept_aspects[i].elements.push_back(schema.element_label(i, old));
        }
    }

    MagBuilder builder{AspectSchema(std::move(kept_aspects))};

    auto project = [&](std::uint64_t encoded) -> std::optional<CompositeVertex> {
        CompositeVertex v = decode(encoded, m.companion());
        for (std::size_t i = 0; i < p; ++i) {
            std::int64_t mapped = remap[i][v.coords[i]];
            if (mapped < 0) return std::nullopt;
            v.coords[i] = static_cast<std::uint32_t>(mapped);
        }
        return v;
    };

    for (const StoredEdge& e : m.edges()) {
        auto from = project(e.from);
        if (!from) continue;
        auto to = project(e.to);
        if (!to) continue;
        builder.add_edge(*from, *to, e.multiplicity, e.tags);
    }
    for (std::uint64_t v : m.registered_vertices()) {
        if (auto mapped = project(v)) builder.register_vertex(*mapped);
    }
    return std::move(builder).freeze();
}

Mag sub_mag_by_name(const Mag& m, const std::map<std::string, std::vector<std::string>>& by_aspect_name) {
    const AspectSchema& schema = m.schema();
    ElementSelection selection;
    selection.reserve(schema.aspect_count());
    for (const Aspect& a : schema.aspects()) {
        selection.push_back(a.elements);
    }
    for (const auto& [name, labels] : by_aspect_name) {
        auto idx = schema.aspect_index(name);
        if (!idx) {
            throw InvalidSelectorError("unknown aspect '" + name + "'");
        }
        selection[*idx] = labels;
    }
    return sub_mag(m, selection);
}

std::size_t SubDetMask::kept_count() const {
    return static_cast<std::size_t>(std::count(keep.begin(), keep.end(), true));
}

bool SubDetMask::is_proper() const {
    const std::size_t kept = kept_count();
    return kept >= 1 && kept < keep.size();
}

SubDetMask SubDetMask::keep_named(const AspectSchema& schema, std::span<const std::string> names) {
    SubDetMask mask;
    mask.keep.assign(schema.aspect_count(), false);
    for (const std::string& name : names) {
        auto idx = schema.aspect_index(name);
        if (!idx) {
            throw InvalidMaskError("unknown aspect '" + name + "'");
        }
        mask.keep[*idx] = true;
    }
    return mask;
}

std::vector<SubDetMask> enumerate_sub_determinations(std::size_t aspect_count) {
    if (aspect_count < 2) return {};
    if (aspect_count > 20) {
        throw Error("refusing to enumerate 2^" + std::to_string(aspect_count) + " sub-determinations");
    }
    std::vector<SubDetMask> masks;
    const std::uint64_t full = (std::uint64_t{1} << aspect_count) - 1;
    masks.reserve(full - 1);
    for (std::uint64_t bits = 1; bits < full; ++bits) {
        SubDetMask mask;
        mask.keep.resize(aspect_count);
        for (std::size_t i = 0; i < aspect_count; ++i) {
            mask.keep[i] = (bits >> i) & 1;
        }
        masks.push_back(std::move(mask));
    }
    return masks;
}

namespace {

void check_mask(const Mag& m, const SubDetMask& mask) {
    if (mask.keep.size() != m.schema().aspect_count()) {
        throw InvalidMaskError("mask length " + std::to_string(mask.keep.size()) + " does not match aspect count " +
                               std::to_string(m.schema().aspect_count()));
    }
    if (!mask.is_proper()) {
        throw InvalidMaskError("sub-determination mask must keep at least one aspect and drop at least one");
    }
}

} // namespace

Mag sub_determine_mag(const Mag& m, const SubDetMask& mask, SelfLoops self_loops) {
    check_mask(m, mask);
    const AspectSchema& schema = m.schema();

    std::vector<std::size_t> kept_idx;
    std::vector<Aspect> kept_aspects;
    for (std::size_t i = 0; i < schema.aspect_count(); ++i) {
        if (mask.keep[i]) {
            kept_idx.push_back(i);
            kept_aspects.push_back(schema.aspect(i));
        }
    }

    MagBuilder builder{AspectSchema(std::move(kept_aspects))};

    auto project = [&](std::uint64_t encoded) {
        CompositeVertex v = decode(encoded, m.companion());
        CompositeVertex out;
        out.coords.reserve(kept_idx.size());
        for (std::size_t i : kept_idx) {
            out.coords.push_back(v.coords[i]);
        }
        return out;
    };

    for (const StoredEdge& e : m.edges()) {
        CompositeVertex from = project(e.from);
        CompositeVertex to = project(e.to);
        if (self_loops == SelfLoops::drop && from == to) continue;
        builder.add_edge(from, to, e.multiplicity, e.tags);
    }
    for (std::uint64_t v : m.occupied_vertices()) {
        builder.register_vertex(project(v));
    }
    return std::move(builder).freeze();
}

SubDeterminedMulti sub_determine_multidigraph(const Mag& m, const SubDetMask& mask, SelfLoops self_loops) {
    Mag projected = sub_determine_mag(m, mask, self_loops);
    const std::uint64_t dropped = m.edge_count() - projected.edge_count();
    DirectedView view = to_directed_graph(projected);
    return SubDeterminedMulti{projected.schema(), std::move(view.graph), dropped};
}

SubDeterminedSimple sub_determine_digraph(const Mag& m, const SubDetMask& mask, SelfLoops self_loops) {
    SubDeterminedMulti multi = sub_determine_multidigraph(m, mask, self_loops);
    std::vector<Digraph::Edge> pairs;
    pairs.reserve(multi.graph.edge_entry_count());
    for (const GraphEdge& e : multi.graph.edges()) {
        pairs.emplace_back(e.from, e.to);
    }
    return SubDeterminedSimple{std::move(multi.schema), Digraph(multi.graph.vertices(), std::move(pairs)),
                               multi.dropped_self_loops};
}

} // namespace magnet
