#ifndef MAGNET_BUNDLE_HPP
#define MAGNET_BUNDLE_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "magnet/ingest.hpp"
#include "magnet/mag.hpp"

namespace magnet {

inline constexpr std::string_view kBundleFormat = "magnet-bundle";
inline constexpr int kBundleVersion = 1;

// Provenance of a persisted graph: inputs, configuration, and tool version.
// `created_utc` is the only field allowed to differ between reruns on
// identical inputs.
struct RunManifest {
    std::string tool = "magnet";
    std::string version;
    std::string created_utc;
    std::vector<std::string> inputs;
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters; // sorted key order

    static std::string now_utc();
};

struct Bundle {
    Mag mag;
    AirportRegistry airports; // entries for airports present in the schema
    RunManifest manifest;
};

// JSON text of the bundle: format/version header, manifest, aspect schema,
// and a columnar edge table. Deterministic except for manifest.created_utc.
std::string bundle_to_json(const Bundle& bundle);

Bundle bundle_from_json(std::string_view json_text);

void save_bundle(const Bundle& bundle, const std::filesystem::path& path);
Bundle load_bundle(const std::filesystem::path& path);

} // namespace magnet

#endif // MAGNET_BUNDLE_HPP
