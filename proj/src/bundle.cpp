#include "magnet/bundle.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "magnet/errors.hpp"

namespace magnet {

using ordered_json = nlohmann::ordered_json;

std::string RunManifest::now_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string bundle_to_json(const Bundle& bundle) {
    ordered_json doc;
    doc["format"] = kBundleFormat;
    doc["version"] = kBundleVersion;

    ordered_json manifest;
    manifest["tool"] = bundle.manifest.tool;
    manifest["tool_version"] = bundle.manifest.version;
    manifest["created_utc"] = bundle.manifest.created_utc;
    manifest["command"] = bundle.manifest.command;
    manifest["inputs"] = bundle.manifest.inputs;
    ordered_json params = ordered_json::object();
    for (const auto& [key, value] : bundle.manifest.parameters) {
        params[key] = value;
    }
    manifest["parameters"] = std::move(params);
    doc["manifest"] = std::move(manifest);

    ordered_json schema = ordered_json::array();
    for (const Aspect& a : bundle.mag.schema().aspects()) {
        schema.push_back({{"name", a.name}, {"elements", a.elements}});
    }
    doc["schema"] = std::move(schema);
    doc["companion"] = bundle.mag.companion().sizes();
    doc["registered_vertices"] = bundle.mag.registered_vertices();

    ordered_json airports = ordered_json::array();
    for (const std::string& code : bundle.airports.codes()) {
        const AirportInfo* info = bundle.airports.find(code);
        airports.push_back({{"iata", code}, {"name", info->name}, {"lat", info->latitude}, {"lon", info->longitude}});
    }
    doc["airports"] = std::move(airports);

    ordered_json edges;
    std::vector<std::uint64_t> from, to;
    std::vector<std::uint32_t> multiplicity;
    ordered_json tags = ordered_json::array();
    from.reserve(bundle.mag.edge_count());
    to.reserve(bundle.mag.edge_count());
    multiplicity.reserve(bundle.mag.edge_count());
    for (const StoredEdge& e : bundle.mag.edges()) {
        from.push_back(e.from);
        to.push_back(e.to);
        multiplicity.push_back(e.multiplicity);
        ordered_json tag = ordered_json::object();
        for (const auto& [key, value] : e.tags) {
            tag[key] = value;
        }
        tags.push_back(std::move(tag));
    }
    edges["from"] = std::move(from);
    edges["to"] = std::move(to);
    edges["multiplicity"] = std::move(multiplicity);
    edges["tags"] = std::move(tags);
    doc["edges"] = std::move(edges);

    return doc.dump(2) + "\n";
}

Bundle bundle_from_json(std::string_view json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bundle is not valid JSON: ") + e.what());
    }

    try {
        if (doc.at("format").get<std::string>() != kBundleFormat) {
            throw ParseError("not a " + std::string(kBundleFormat) + " file");
        }
        if (doc.at("version").get<int>() != kBundleVersion) {
            throw ParseError("unsupported bundle version " + doc.at("version").dump());
        }

        Bundle bundle;
        const ordered_json& manifest = doc.at("manifest");
        bundle.manifest.tool = manifest.at("tool").get<std::string>();
        bundle.manifest.version = manifest.at("tool_version").get<std::string>();
        bundle.manifest.created_utc = manifest.at("created_utc").get<std::string>();
        bundle.manifest.command = manifest.at("command").get<std::string>();
        bundle.manifest.inputs = manifest.at("inputs").get<std::vector<std::string>>();
        for (const auto& [key, value] : manifest.at("parameters").items()) {
            bundle.manifest.parameters.emplace_back(key, value.get<std::string>());
        }

        std::vector<Aspect> aspects;
        for (const ordered_json& a : doc.at("schema")) {
            aspects.push_back(Aspect{a.at("name").get<std::string>(), a.at("elements").get<std::vector<std::string>>()});
        }
        AspectSchema schema{std::move(aspects)};
        if (schema.companion().sizes() != doc.at("companion").get<std::vector<std::uint64_t>>()) {
            throw ParseError("companion tuple does not match the schema");
        }

        for (const ordered_json& a : doc.at("airports")) {
            bundle.airports.add(a.at("iata").get<std::string>(),
                                AirportInfo{a.at("name").get<std::string>(), a.at("lat").get<double>(),
                                            a.at("lon").get<double>()});
        }

        MagBuilder builder{schema};
        const ordered_json& edges = doc.at("edges");
        const auto& from = edges.at("from");
        const auto& to = edges.at("to");
        const auto& multiplicity = edges.at("multiplicity");
        const auto& tags = edges.at("tags");
        if (from.size() != to.size() || from.size() != multiplicity.size() || from.size() != tags.size()) {
            throw ParseError("edge table columns have mismatched lengths");
        }
        for (std::size_t i = 0; i < from.size(); ++i) {
            EdgeTags edge_tags;
            for (const auto& [key, value] : tags[i].items()) {
                edge_tags.emplace_back(key, value.get<std::string>());
            }
            builder.add_edge(decode(from[i].get<std::uint64_t>(), schema.companion()),
                             decode(to[i].get<std::uint64_t>(), schema.companion()),
                             multiplicity[i].get<std::uint32_t>(), std::move(edge_tags));
        }
        for (std::uint64_t v : doc.at("registered_vertices").get<std::vector<std::uint64_t>>()) {
            builder.register_vertex(decode(v, schema.companion()));
        }
        bundle.mag = std::move(builder).freeze();
        return bundle;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed bundle: ") + e.what());
    }
}

void save_bundle(const Bundle& bundle, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << bundle_to_json(bundle);
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

Bundle load_bundle(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return bundle_from_json(buffer.str());
}

} // namespace magnet
