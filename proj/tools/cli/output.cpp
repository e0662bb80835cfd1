#include "output.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "darkport/error.hpp"

namespace darkport::cli {

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::kCsv;
    if (name == "json") return Format::kJson;
    throw DomainError("unknown format '" + name + "' (expected csv or json)");
}

void Table::add(std::vector<double> row) {
    if (row.size() != columns.size()) throw std::logic_error("table row width does not match its header");
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const Table& table, std::ostream& out) {
    out << "# darkport-csv v" << kCsvSchemaVersion << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
    }
}

nlohmann::json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

nlohmann::json json_array(const std::vector<double>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (double x : v) a.push_back(json_number(x));
    return a;
}

Destination resolve_destination(const std::string& out_flag, const std::string& default_name) {
    if (!out_flag.empty()) return {out_flag};
    if (const char* dir = std::getenv("DARKPORT_OUTDIR"); dir && *dir) {
        return {std::filesystem::path(dir) / default_name};
    }
    return {};
}

std::filesystem::path resolve_outdir(const std::string& outdir_flag) {
    if (!outdir_flag.empty()) return outdir_flag;
    if (const char* dir = std::getenv("DARKPORT_OUTDIR"); dir && *dir) return dir;
    return ".";
}

void emit(const Destination& dest, const std::string& text) {
    if (dest.to_stdout()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::error_code ec;
    if (dest.file.has_parent_path()) std::filesystem::create_directories(dest.file.parent_path(), ec);
    std::ofstream f(dest.file, std::ios::binary);
    f << text;
    f.close();
    if (!f) throw IoError("could not write " + dest.file.string());
}

nlohmann::json RunManifest::to_json() const {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);

    nlohmann::json j;
    j["schema"] = "darkport.manifest/1";
    j["command"] = command;
    j["parameters"] = parameters;
    j["seed"] = has_seed ? nlohmann::json(seed) : nlohmann::json(nullptr);
    j["tool_version"] = kToolVersion;
    j["timestamp"] = stamp;
    j["outputs"] = outputs;
    return j;
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
    return output.string() + ".manifest.json";
}

std::filesystem::path write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    emit({path}, manifest.to_json().dump(2) + "\n");
    return path;
}

}  // namespace darkport::cli
