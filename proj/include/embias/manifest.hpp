#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace embias {

/// Record of everything that determined one command's output: resolved
/// flags, seeds, input content hashes, and the tool version. Written
/// next to every output artifact so no number travels without the
/// configuration that produced it.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> args;
    std::vector<std::uint64_t> seeds;
    std::map<std::string, std::string> input_hashes;  // path -> sha256
    std::string tool_version;

    static RunManifest start(std::string command);

    /// Hashes the file's bytes; throws DataError if unreadable.
    void add_input(const std::filesystem::path& path);

    std::string to_json() const;
    static RunManifest from_json(const std::string& text);

    /// Writes `<output>.manifest.json`.
    void write_alongside(const std::filesystem::path& output) const;
};

}  // namespace embias
