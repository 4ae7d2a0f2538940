#include <doctest.h>

#include <json.hpp>

#include "magnet/analysis.hpp"
#include "magnet/bundle.hpp"
#include "magnet/export.hpp"

using namespace magnet;
using nlohmann::json;

namespace {

AirportRegistry geo_registry() {
    AirportRegistry registry;
    registry.add("AAA", {"Alpha", -23.62, -46.65});
    registry.add("BBB", {"Bravo", -22.91, -43.16});
    registry.add("CCC", {"Charlie", -19.85, -43.95});
    return registry;
}

Mag small_mag() {
    std::vector<ScheduleRecord> records = {
        {"X", "1", "AAA", "BBB", 100, 160, 1},
        {"X", "2", "AAA", "BBB", 200, 260, 1},
        {"X", "3", "BBB", "CCC", 300, 360, 1},
    };
    return build_mag(records, {}, geo_registry()).mag;
}

} // namespace

TEST_CASE("export_geojson: empty graph is an empty FeatureCollection") {
    const std::string text = export_geojson(LabeledGraph{}, geo_registry(), GraphMode::digraph);
    const json doc = json::parse(text);
    CHECK(doc["type"] == "FeatureCollection");
    CHECK(doc["features"].empty());
}

TEST_CASE("export_geojson: points then lines, sorted, with degree and multiplicity") {
    const LabeledGraph graph = layer_graph(small_mag(), "X", 1, GraphMode::multidigraph);
    const std::string text = export_geojson(graph, geo_registry(), GraphMode::multidigraph);
    const json doc = json::parse(text);
    REQUIRE(doc["features"].size() == 5); // 3 airports + 2 distinct pairs

    CHECK(doc["features"][0]["geometry"]["type"] == "Point");
    CHECK(doc["features"][0]["properties"]["iata"] == "AAA");
    CHECK(doc["features"][0]["properties"]["degree"] == 2);
    CHECK(doc["features"][0]["geometry"]["coordinates"][0] == doctest::Approx(-46.65)); // lon first
    CHECK(doc["features"][1]["properties"]["iata"] == "BBB");
    CHECK(doc["features"][1]["properties"]["degree"] == 3);

    CHECK(doc["features"][3]["geometry"]["type"] == "LineString");
    CHECK(doc["features"][3]["properties"]["from"] == "AAA");
    CHECK(doc["features"][3]["properties"]["multiplicity"] == 2);
    CHECK(doc["features"][4]["properties"]["from"] == "BBB");

    // Digraph mode omits multiplicity.
    const LabeledGraph routes = layer_graph(small_mag(), "X", 1, GraphMode::digraph);
    const json route_doc = json::parse(export_geojson(routes, geo_registry(), GraphMode::digraph));
    CHECK_FALSE(route_doc["features"][3]["properties"].contains("multiplicity"));
}

TEST_CASE("export_geojson: unresolved airports are a hard error") {
    LabeledGraph graph;
    graph.vertices = {"AAA", "QQQ", "ZZZ"};
    CHECK_THROWS_WITH_AS(export_geojson(graph, geo_registry(), GraphMode::digraph),
                         "airports missing from the registry: QQQ, ZZZ", UnresolvedAirportError);
}

TEST_CASE("export_dot: node and edge statements") {
    LabeledGraph graph;
    graph.vertices = {"AAA", "BBB"};
    graph.edges = {{"AAA", "BBB", 1}};
    CHECK(export_dot(graph) == "digraph g {\n  \"AAA\";\n  \"BBB\";\n  \"AAA\" -> \"BBB\";\n}\n");
    CHECK(export_dot(LabeledGraph{}) == "digraph g {\n}\n");
}

TEST_CASE("export_dot: parallel edges repeat or collapse with a label") {
    LabeledGraph graph;
    graph.vertices = {"AAA", "BBB"};
    graph.edges = {{"AAA", "BBB", 3}};
    const std::string repeated = export_dot(graph);
    CHECK(std::count(repeated.begin(), repeated.end(), '>') == 3);
    const std::string collapsed = export_dot(graph, DotOptions{true});
    CHECK(collapsed.find("[label=3]") != std::string::npos);
    CHECK(std::count(collapsed.begin(), collapsed.end(), '>') == 1);
}

TEST_CASE("bundle round-trips the Mag, registry, and manifest") {
    Bundle bundle;
    bundle.mag = small_mag();
    bundle.airports = geo_registry();
    bundle.manifest.version = "0.0.test";
    bundle.manifest.created_utc = "2016-05-13T00:00:00Z";
    bundle.manifest.command = "ingest";
    bundle.manifest.inputs = {"schedule.csv", "airports.csv"};
    bundle.manifest.parameters = {{"min_connect_minutes", "30"}};

    const std::string text = bundle_to_json(bundle);
    const Bundle loaded = bundle_from_json(text);

    CHECK(loaded.mag.structurally_equal(bundle.mag));
    CHECK(loaded.airports.codes() == bundle.airports.codes());
    CHECK(loaded.airports.find("AAA")->name == "Alpha");
    CHECK(loaded.manifest.created_utc == "2016-05-13T00:00:00Z");
    CHECK(loaded.manifest.parameters == bundle.manifest.parameters);

    // Deterministic bytes for a fixed manifest.
    CHECK(bundle_to_json(loaded) == text);
}

TEST_CASE("bundle rejects malformed input") {
    CHECK_THROWS_AS(bundle_from_json("not json"), ParseError);
    CHECK_THROWS_AS(bundle_from_json("{}"), ParseError);
    CHECK_THROWS_AS(bundle_from_json(R"({"format":"other","version":1})"), ParseError);

    Bundle bundle;
    bundle.mag = small_mag();
    std::string text = bundle_to_json(bundle);
    text.replace(text.find("\"version\": 1"), 12, "\"version\": 9");
    CHECK_THROWS_AS(bundle_from_json(text), ParseError);
}

TEST_CASE("save/load bundle via the filesystem") {
    Bundle bundle;
    bundle.mag = small_mag();
    bundle.airports = geo_registry();
    const std::filesystem::path path = std::filesystem::temp_directory_path() / "magnet_test_bundle.json";
    save_bundle(bundle, path);
    const Bundle loaded = load_bundle(path);
    CHECK(loaded.mag.structurally_equal(bundle.mag));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_bundle(path), IoError);
}
