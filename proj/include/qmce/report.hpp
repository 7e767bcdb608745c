#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace qmce {

inline constexpr const char* kArtifactName = "qmce";
inline constexpr const char* kArtifactVersion = "0.1.0";

// Structured record of one experiment run. `results` is a pure function of
// `parameters` (seeds included), so re-running reproduces it byte for byte;
// wall-clock data lives only in the timestamp fields.
struct ExperimentReport {
    std::string experiment;
    nlohmann::json parameters;
    nlohmann::json results;
    nlohmann::json environment;
    std::string started_utc;
    std::string finished_utc;

    nlohmann::json to_json() const;
    static ExperimentReport from_json(const nlohmann::json& j);
};

nlohmann::json artifact_environment();
std::string utc_timestamp_now();

// Writes via a temporary file in the target directory plus rename.
void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& j);

nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace qmce
