#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>

namespace bwa {

std::string sha256_hex(const std::string& data);

// Crash-evident run manifest: written with status "running" before the
// computation and finalized with per-output checksums after.
class RunManifest {
public:
    RunManifest(std::filesystem::path dir, nlohmann::json config_echo);

    void begin();                                  // writes manifest.json (status: running)
    void add_output(const std::filesystem::path& file); // records sha256 of a written file
    void finish();                                 // rewrites with status: complete

private:
    std::filesystem::path path_;
    nlohmann::json doc_;
};

} // namespace bwa
