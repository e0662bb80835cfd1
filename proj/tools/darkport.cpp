#include <cmath>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "darkport/error.hpp"

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitIo = 4;
constexpr int kExitEstimation = 5;

}  // namespace

int main(int argc, char** argv) {
    using namespace darkport;
    using namespace darkport::cli;

    GlobalOptions g;
    g.argv.assign(argv, argv + argc);

    CLI::App app{"Photon-number statistics and Fisher information of a squeezed-light dark port"};
    app.set_version_flag("--version", kToolVersion);
    app.set_config("--config", "", "key = value config file; [command] sections hold command options");
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--r", g.r, "squeezing parameter")->capture_default_str();
    app.add_option("--eps", g.eps, "photon loss epsilon in [0, 1]")->capture_default_str();
    app.add_option("--tail-tol", g.tail_tol, "allowed normalization deficit")->capture_default_str();
    app.add_option("--format", g.format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", g.out, "output file (default: $DARKPORT_OUTDIR/<command>.<ext> or stdout)");
    app.add_option("--outdir", g.outdir, "output directory for figure (default: $DARKPORT_OUTDIR or .)");
    app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
    app.add_flag("--serial", g.serial, "use the serial reference kernels");

    StatsOptions stats;
    auto* s = app.add_subcommand("stats", "photon number distribution at displacement x (lossless unless --eps is given)");
    s->add_option("--x", stats.x, "quadrature displacement")->required();

    ZerosOptions zeros_opt;
    auto* z = app.add_subcommand("zeros", "zero points x_{n,k} for n <= n-max");
    z->add_option("--n-max", zeros_opt.n_max, "largest photon number")->capture_default_str();

    FisherOptions fisher;
    auto* f = app.add_subcommand("fisher", "Fisher information curves");
    f->add_option("--x-min", fisher.x_min)->capture_default_str();
    f->add_option("--x-max", fisher.x_max)->capture_default_str();
    f->add_option("--points", fisher.points)->capture_default_str();
    f->add_option("--mode", fisher.mode, "exact, approx, avg or all")
        ->capture_default_str()
        ->check(CLI::IsMember({"exact", "approx", "avg", "all"}));

    SimulateOptions sim;
    sim.x_lo = std::numeric_limits<double>::quiet_NaN();
    sim.x_hi = std::numeric_limits<double>::quiet_NaN();
    auto* m = app.add_subcommand("simulate", "Monte Carlo estimation experiment (JSON report)");
    m->add_option("--x-true", sim.x_true)->capture_default_str();
    m->add_option("--samples", sim.samples, "samples per trial")->capture_default_str();
    m->add_option("--trials", sim.trials)->capture_default_str();
    m->add_option("--estimator", sim.estimator, "mle, mean or both")
        ->capture_default_str()
        ->check(CLI::IsMember({"mle", "mean", "both"}));
    m->add_option("--x-lo", sim.x_lo, "search interval lower end");
    m->add_option("--x-hi", sim.x_hi, "search interval upper end");

    FigureOptions fig;
    auto* fg = app.add_subcommand("figure", "datasets behind one published figure");
    fg->add_option("--id", fig.id, "figure id")->required();
    fg->add_flag("--gnuplot", fig.gnuplot, "also write a gnuplot script");
    fg->add_option("--samples", fig.samples, "Monte Carlo samples per trial (fig7b)")->capture_default_str();
    fg->add_option("--trials", fig.trials, "Monte Carlo trials per point (fig7b)")->capture_default_str();

    for (auto* sub : {s, z, f, m, fg}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitDomain;
    }

    // stats reports the pure distribution unless a loss was asked for.
    if (*s && app.get_option("--eps")->count() == 0) g.eps = 0.0;

    try {
        if (*s) cmd_stats(g, stats);
        if (*z) cmd_zeros(g, zeros_opt);
        if (*f) cmd_fisher(g, fisher);
        if (*m) cmd_simulate(g, sim);
        if (*fg) cmd_figure(g, fig);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const InvariantViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const CutoffError& e) {
        std::cerr << "error: invariant 'norm_deficit' violated: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const NonPhysicalStateError& e) {
        std::cerr << "error: invariant 'physical_state' violated: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const EstimationError& e) {
        std::cerr << "error: estimation failed: " << e.what() << '\n';
        return kExitEstimation;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
