#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "darkport/fisher.hpp"
#include "output.hpp"

namespace darkport::cli {

/// Options shared by every subcommand.
struct GlobalOptions {
    double r = 1.0;
    double eps = 0.002;
    double tail_tol = 1e-12;
    std::string format = "csv";
    std::string out;
    std::string outdir;
    std::uint64_t seed = 1;
    bool serial = false;
    std::vector<std::string> argv;

    Execution execution() const { return serial ? Execution::kSerial : Execution::kParallel; }
    nlohmann::json to_json() const;
};

/// A failed post-condition on computed output, reported by name.
struct InvariantViolation : std::runtime_error {
    InvariantViolation(std::string name, const std::string& detail)
        : std::runtime_error("invariant '" + name + "' violated: " + detail), invariant(std::move(name)) {}
    std::string invariant;
};

struct StatsOptions {
    double x = 0.0;
};

struct ZerosOptions {
    int n_max = 10;
};

struct FisherOptions {
    double x_min = 0.0;
    double x_max = 4.0;
    std::size_t points = 401;
    std::string mode = "all";
};

struct SimulateOptions {
    double x_true = 1.0;
    std::size_t samples = 2000;
    std::size_t trials = 200;
    std::string estimator = "mle";
    double x_lo = -1.0;  ///< negative means the default interval
    double x_hi = -1.0;
};

struct FigureOptions {
    std::string id;
    bool gnuplot = false;
    std::size_t samples = 2000;
    std::size_t trials = 200;
};

const std::vector<std::string>& figure_ids();
unsigned parse_mode(const std::string& mode);

void cmd_stats(const GlobalOptions& g, const StatsOptions& o);
void cmd_zeros(const GlobalOptions& g, const ZerosOptions& o);
void cmd_fisher(const GlobalOptions& g, const FisherOptions& o);
void cmd_simulate(const GlobalOptions& g, const SimulateOptions& o);
void cmd_figure(const GlobalOptions& g, const FigureOptions& o);

/// Dips deeper than this fraction of (1 - eps) H_F are reported.
inline constexpr double kReportedDipDepth = 1e-2;
std::vector<DipAnnotation> reported_dips(const FisherCurve& curve);

/// Shared post-condition checks.
void check_distribution(const std::vector<double>& p, double deficit, double tail_tol);
void check_fisher_curve(const FisherCurve& curve);

/// Writes text to dest and, for files, a manifest next to it.
void publish(const Destination& dest, const std::string& text, RunManifest manifest);

}  // namespace darkport::cli
