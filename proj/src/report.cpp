#include "qmce/report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include "qmce/errors.hpp"

namespace qmce {

nlohmann::json ExperimentReport::to_json() const {
    return nlohmann::json{
        {"format", "qmce-report"},
        {"version", 1},
        {"experiment", experiment},
        {"parameters", parameters},
        {"results", results},
        {"environment", environment},
        {"timestamps", {{"started_utc", started_utc}, {"finished_utc", finished_utc}}},
    };
}

ExperimentReport ExperimentReport::from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "qmce-report")
        throw DimensionError("report: unexpected format tag");
    ExperimentReport r;
    r.experiment = j.at("experiment").get<std::string>();
    r.parameters = j.at("parameters");
    r.results = j.at("results");
    r.environment = j.at("environment");
    r.started_utc = j.at("timestamps").value("started_utc", "");
    r.finished_utc = j.at("timestamps").value("finished_utc", "");
    return r;
}

nlohmann::json artifact_environment() {
    return nlohmann::json{{"artifact", kArtifactName}, {"version", kArtifactVersion}};
}

std::string utc_timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& j) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw Error("cannot open for writing: " + tmp.string());
        out << j.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open: " + path.string());
    return nlohmann::json::parse(in);
}

}  // namespace qmce
