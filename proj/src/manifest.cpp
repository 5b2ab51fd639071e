#include "embias/manifest.hpp"

#include <fstream>

#include "json.hpp"

#include "embias/error.hpp"
#include "embias/sha256.hpp"
#include "embias/version.hpp"

namespace embias {

RunManifest RunManifest::start(std::string command) {
    RunManifest m;
    m.command = std::move(command);
    m.tool_version = kVersion;
    return m;
}

void RunManifest::add_input(const std::filesystem::path& path) {
    input_hashes[path.string()] = sha256_file_hex(path);
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["args"] = args;
    j["seeds"] = seeds;
    j["input_hashes"] = input_hashes;
    j["tool_version"] = tool_version;
    return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bad manifest JSON: ") + e.what());
    }
    RunManifest m;
    try {
        m.command = j.at("command").get<std::string>();
        m.args = j.at("args").get<std::map<std::string, std::string>>();
        m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        m.input_hashes = j.at("input_hashes").get<std::map<std::string, std::string>>();
        m.tool_version = j.at("tool_version").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bad manifest JSON: ") + e.what());
    }
    return m;
}

void RunManifest::write_alongside(const std::filesystem::path& output) const {
    const std::filesystem::path path = output.string() + ".manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << to_json();
    if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace embias
