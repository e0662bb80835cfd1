#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace darkport::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kCsvSchemaVersion = "1";

enum class Format { kCsv, kJson };

Format parse_format(const std::string& name);

/// Numeric table; written as CSV with a "# darkport-csv v1" preamble line.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add(std::vector<double> row);
};

/// %.17g, with "nan" / "inf" / "-inf" for non-finite values.
std::string format_number(double v);

void write_csv(const Table& table, std::ostream& out);

/// JSON number or null for non-finite values.
nlohmann::json json_number(double v);
nlohmann::json json_array(const std::vector<double>& v);

/// Output destination: a file (with manifest) or stdout (without).
struct Destination {
    std::filesystem::path file;  ///< empty means stdout
    bool to_stdout() const { return file.empty(); }
};

/// --out wins; otherwise $DARKPORT_OUTDIR/<default_name> if the variable is set; otherwise stdout.
Destination resolve_destination(const std::string& out_flag, const std::string& default_name);

/// Output directory for multi-file commands: flag, then $DARKPORT_OUTDIR, then ".".
std::filesystem::path resolve_outdir(const std::string& outdir_flag);

/// Writes text to the destination, creating parent directories.  Throws IoError.
void emit(const Destination& dest, const std::string& text);

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reproduction record stored next to every output file.
struct RunManifest {
    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::vector<std::string> outputs;

    nlohmann::json to_json() const;
};

/// Writes `<file>.manifest.json` (or the given path) and returns its path.
std::filesystem::path write_manifest(const RunManifest& manifest, const std::filesystem::path& path);
std::filesystem::path manifest_path_for(const std::filesystem::path& output);

}  // namespace darkport::cli
