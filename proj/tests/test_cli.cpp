#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Cmd {
    int code = -1;
    std::string out;
};

Cmd run_cli(const std::string& args, bool merge_stderr = false) {
    const std::string cmd =
        std::string(MAGNET_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    Cmd result;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        result.out.append(buf, n);
    }
    const int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const fs::path kFixtures = fs::path(MAGNET_FIXTURE_DIR);

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("magnet_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string ingest_and_bundle(const TempDir& dir, const std::string& name = "fixture.bundle.json") {
    const std::string bundle = (dir.path / name).string();
    const Cmd cmd = run_cli("ingest --schedule " + (kFixtures / "schedule.csv").string() + " --airports " +
                            (kFixtures / "airports.csv").string() + " --out " + bundle);
    REQUIRE(cmd.code == 0);
    return bundle;
}

} // namespace

TEST_CASE("cli: ingest reports the bundle inventory") {
    TempDir dir;
    const std::string bundle = (dir.path / "out.json").string();
    const Cmd cmd = run_cli("ingest --schedule " + (kFixtures / "schedule.csv").string() + " --airports " +
                            (kFixtures / "airports.csv").string() + " --out " + bundle);
    CHECK(cmd.code == 0);
    CHECK(cmd.out ==
          "bundle=" + bundle + " edges=38 flights=25 connections=13 airlines=2 periods=2\n");
    CHECK(fs::exists(bundle));
}

TEST_CASE("cli: reruns produce identical bundles modulo the timestamp") {
    TempDir dir;
    const std::string first = ingest_and_bundle(dir, "a.json");
    const std::string second = ingest_and_bundle(dir, "b.json");
    json a = json::parse(slurp(first));
    json b = json::parse(slurp(second));
    a["manifest"].erase("created_utc");
    b["manifest"].erase("created_utc");
    CHECK(a == b);
}

TEST_CASE("cli: summarize prints two-period deltas") {
    TempDir dir;
    const std::string bundle = ingest_and_bundle(dir);
    const Cmd cmd = run_cli("summarize --bundle " + bundle);
    CHECK(cmd.code == 0);
    const std::string expected =
        "# bundle=" + bundle + " min_connect=30 max_connect=360 cross_airline=false\n" +
        "airline  airports p1  airports p2  diff%  routes p1  routes p2  diff%  flights p1  flights p2  diff%\n"
        "BLU                2            4   +100          2          5   +150           4           7    +75\n"
        "RED                4            3    -25          6          4    -33           8           6    -25\n"
        "TOTAL              -            -      -          8          9    +13          12          13     +8\n";
    CHECK(cmd.out == expected);

    // Byte-identical on rerun.
    CHECK(run_cli("summarize --bundle " + bundle).out == expected);
}

TEST_CASE("cli: summarize single period and airline filters") {
    TempDir dir;
    const std::string bundle = ingest_and_bundle(dir);

    const Cmd period = run_cli("summarize --bundle " + bundle + " --period 1");
    CHECK(period.code == 0);
    CHECK(period.out.find("BLU           1         2       2        4\n") != std::string::npos);
    CHECK(period.out.find("TOTAL         1         -       8       12\n") != std::string::npos);

    const Cmd filtered = run_cli("summarize --bundle " + bundle + " --airline RED --period 2");
    CHECK(filtered.code == 0);
    CHECK(filtered.out.find("RED") != std::string::npos);
    CHECK(filtered.out.find("BLU") == std::string::npos);
    CHECK(filtered.out.find("TOTAL") == std::string::npos);

    const Cmd csv = run_cli("summarize --bundle " + bundle + " --csv " + (dir.path / "s.csv").string());
    CHECK(csv.code == 0);
    const std::string written = slurp(dir.path / "s.csv");
    CHECK(written.find("airline,airports_p1,airports_p2,airports_diff_pct,") == 0);
    CHECK(written.find("RED,4,3,-25,6,4,-33,8,6,-25\n") != std::string::npos);

    // RED period 1 flies A<->B and A<->C both ways; unordered counting
    // merges each with its reverse: 6 directed routes become 4.
    const Cmd undirected = run_cli("summarize --bundle " + bundle + " --airline RED --period 1 --undirected-routes");
    CHECK(undirected.code == 0);
    CHECK(undirected.out.find("RED           1         4       4        8\n") != std::string::npos);
}

TEST_CASE("cli: kcore digraph and multidigraph views") {
    TempDir dir;
    const std::string bundle = ingest_and_bundle(dir);

    const Cmd whole_routes = run_cli("kcore --bundle " + bundle + " --period 1 --mode digraph");
    CHECK(whole_routes.code == 0);
    CHECK(whole_routes.out.find("airline=* period=1 mode=digraph\nK=3 airports=3 routes=5\n") != std::string::npos);

    const Cmd whole_flights = run_cli("kcore --bundle " + bundle + " --period 1 --mode multidigraph");
    CHECK(whole_flights.out.find("K=8 airports=2 flights=8\n") != std::string::npos);

    const Cmd red_p2 = run_cli("kcore --bundle " + bundle + " --period 2 --mode multidigraph --airline RED");
    CHECK(red_p2.out.find("K=4 airports=2 flights=4\n") != std::string::npos);

    const Cmd level0 = run_cli("kcore --bundle " + bundle + " --period 1 --k 0");
    CHECK(level0.out.find("K=0 airports=4 routes=6\n") != std::string::npos);

    const Cmd beyond = run_cli("kcore --bundle " + bundle + " --period 1 --k 99");
    CHECK(beyond.code == 0);
    CHECK(beyond.out.find("K=99 airports=0 routes=0 (empty: K exceeds maximum 3)\n") != std::string::npos);
}

TEST_CASE("cli: kcore exports are deterministic files") {
    TempDir dir;
    const std::string bundle = ingest_and_bundle(dir);
    const std::string geojson = (dir.path / "core.geojson").string();
    const std::string dot = (dir.path / "core.dot").string();

    const Cmd cmd = run_cli("kcore --bundle " + bundle + " --period 1 --mode multidigraph --geojson " + geojson +
                            " --dot " + dot);
    CHECK(cmd.code == 0);

    const json parsed = json::parse(slurp(geojson));
    CHECK(parsed["type"] == "FeatureCollection");
    // Whole-network period-1 flight core: AAA<->BBB with 4 flights each way.
    REQUIRE(parsed["features"].size() == 4); // 2 points + 2 lines
    CHECK(parsed["features"][2]["properties"]["multiplicity"] == 4);

    const std::string dot_text = slurp(dot);
    CHECK(dot_text.find("digraph g {") == 0);
    CHECK(std::count(dot_text.begin(), dot_text.end(), '>') == 8);

    const std::string before = slurp(geojson);
    REQUIRE(run_cli("kcore --bundle " + bundle + " --period 1 --mode multidigraph --geojson " + geojson)
                .code == 0);
    CHECK(slurp(geojson) == before);

    // Every artifact gets a provenance sidecar naming the command and the
    // bundle's own inputs.
    const json manifest = json::parse(slurp(geojson + ".manifest.json"));
    CHECK(manifest["command"] == "kcore");
    CHECK(manifest["parameters"]["mode"] == "multidigraph");
    CHECK(manifest["source"]["command"] == "ingest");
    CHECK(manifest["source"]["parameters"]["min_connect_minutes"] == "30");
}

TEST_CASE("cli: subdet over airport and period") {
    TempDir dir;
    const std::string bundle = ingest_and_bundle(dir);

    const Cmd routes = run_cli("subdet --bundle " + bundle + " --keep airport,period --mode digraph");
    CHECK(routes.code == 0);
    CHECK(routes.out.find("vertices=8 edges=13 dropped_self_loops=13\n") != std::string::npos);

    const Cmd flights = run_cli("subdet --bundle " + bundle + " --keep airport,period --mode multidigraph");
    CHECK(flights.out.find("vertices=8 edges=25 dropped_self_loops=13\n") != std::string::npos);

    const Cmd kept = run_cli("subdet --bundle " + bundle + " --keep airport,period --mode multidigraph"
                             " --self-loops keep");
    CHECK(kept.out.find("vertices=8 edges=38 dropped_self_loops=0\n") != std::string::npos);

    const Cmd csv = run_cli("subdet --bundle " + bundle + " --keep airport --mode digraph --csv " +
                            (dir.path / "routes.csv").string());
    CHECK(csv.code == 0);
    const std::string written = slurp(dir.path / "routes.csv");
    CHECK(written.find("from,to,multiplicity\n") == 0);
    CHECK(written.find("\"AAA\",\"BBB\",1\n") != std::string::npos);
}

TEST_CASE("cli: codeshare report") {
    TempDir dir;
    const std::string bundle = ingest_and_bundle(dir);
    const Cmd cmd = run_cli("codeshare --bundle " + bundle + " --list");
    CHECK(cmd.code == 0);
    const std::string expected =
        "# bundle=" + bundle + " min_connect=30 max_connect=360 cross_airline=false\n" +
        "period=1 codeshare_flights=2\n"
        "  AAA->BBB dep=480 arr=540: BLU 201 RED 101\n"
        "period=2 codeshare_flights=2\n"
        "  AAA->BBB dep=480 arr=540: BLU 201 RED 101\n"
        "change=0.0%\n";
    CHECK(cmd.out == expected);
}

TEST_CASE("cli: export full layer graphs") {
    TempDir dir;
    const std::string bundle = ingest_and_bundle(dir);
    const std::string geojson = (dir.path / "layer.geojson").string();
    const Cmd cmd = run_cli("export --bundle " + bundle + " --airline RED --period 1 --mode digraph --geojson " +
                            geojson);
    CHECK(cmd.code == 0);
    CHECK(cmd.out.find("airline=RED period=1 mode=digraph airports=4 routes=6\n") != std::string::npos);
    const json parsed = json::parse(slurp(geojson));
    CHECK(parsed["features"].size() == 10); // 4 airports + 6 routes
}

TEST_CASE("cli: exit codes distinguish failure classes") {
    TempDir dir;

    // Missing input file.
    const Cmd missing = run_cli("ingest --schedule /nonexistent.csv --airports " +
                                (kFixtures / "airports.csv").string() + " --out " + (dir.path / "x.json").string());
    CHECK(missing.code == 3);

    // Malformed CSV header.
    const fs::path bad_csv = dir.path / "bad.csv";
    std::ofstream(bad_csv) << "not,a,schedule\n";
    const Cmd bad = run_cli("ingest --schedule " + bad_csv.string() + " --airports " +
                            (kFixtures / "airports.csv").string() + " --out " + (dir.path / "x.json").string());
    CHECK(bad.code == 4);

    // Invalid flags.
    const Cmd usage = run_cli("kcore --no-such-flag", true);
    CHECK(usage.code == 2);
    const Cmd no_sub = run_cli("", true);
    CHECK(no_sub.code == 2);

    // Unknown airline / period.
    const std::string bundle = ingest_and_bundle(dir);
    CHECK(run_cli("summarize --bundle " + bundle + " --airline ZZZ").code == 6);
    CHECK(run_cli("kcore --bundle " + bundle + " --period 7").code == 6);
    CHECK(run_cli("kcore --bundle " + bundle + " --airline QQQ --period 1").code == 6);

    // Corrupt bundle.
    const fs::path corrupt = dir.path / "corrupt.json";
    std::ofstream(corrupt) << "{}";
    CHECK(run_cli("summarize --bundle " + corrupt.string()).code == 4);

    // Ambiguous period.
    CHECK(run_cli("kcore --bundle " + bundle).code == 2);
}

TEST_CASE("cli: config file overrides defaults, flags override the file") {
    TempDir dir;
    const fs::path config = dir.path / "build.conf";
    std::ofstream(config) << "# tighter transfer window\nmin_connect_minutes = 40\nmax_connect_minutes = 60\n";

    const std::string bundle = (dir.path / "configured.json").string();
    const Cmd cmd = run_cli("ingest --schedule " + (kFixtures / "schedule.csv").string() + " --airports " +
                            (kFixtures / "airports.csv").string() + " --out " + bundle + " --config " +
                            config.string());
    CHECK(cmd.code == 0);
    // Window [40, 60] keeps only the 40/60-minute transfers: RED p1 BBB(40)
    // and CCC(60), RED p2 BBB(40) and CCC(60), BLU p1 BBB(60) AAA(60),
    // BLU p2 BBB(60) AAA(60) DDD(60).
    CHECK(cmd.out.find("connections=9") != std::string::npos);

    const Cmd overridden = run_cli("ingest --schedule " + (kFixtures / "schedule.csv").string() + " --airports " +
                                   (kFixtures / "airports.csv").string() + " --out " + bundle + " --config " +
                                   config.string() + " --min-connect 30 --max-connect 360");
    CHECK(overridden.out.find("connections=13") != std::string::npos);
}
