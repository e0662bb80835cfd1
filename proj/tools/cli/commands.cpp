#include "commands.hpp"

#include <cmath>
#include <sstream>

#include "darkport/error.hpp"
#include "darkport/estimation.hpp"
#include "darkport/fock.hpp"
#include "darkport/loss.hpp"

namespace darkport::cli {

namespace {

std::string render(const Table& table) {
    std::ostringstream s;
    write_csv(table, s);
    return s.str();
}

RunManifest base_manifest(const std::string& command, const GlobalOptions& g) {
    RunManifest m;
    m.command = command;
    m.parameters = g.to_json();
    m.seed = g.seed;
    m.has_seed = true;
    return m;
}

// Largest CFI any measurement can reach for the lossy displaced squeezed state.
double displacement_qfi(const SqueezedVacuumSpec& spec, const LossChannel& channel) {
    const double eta = channel.efficiency();
    return 4.0 * eta / (eta * std::exp(-2.0 * spec.r()) + channel.epsilon());
}

nlohmann::json dips_json(const std::vector<DipAnnotation>& dips) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& d : dips) a.push_back({{"n", d.n}, {"k", d.k}, {"x_dip", d.x_dip}, {"depth", d.depth}});
    return a;
}

nlohmann::json report_json(const EstimationReport& rep) {
    return {{"method", rep.method},
            {"x_true", rep.x_true},
            {"n_samples", rep.n_samples},
            {"n_trials", rep.n_trials},
            {"seed", rep.seed},
            {"interval", {{"lo", json_number(rep.interval.lo)}, {"hi", json_number(rep.interval.hi)}}},
            {"mse", json_number(rep.mse)},
            {"sensitivity", json_number(rep.sensitivity)},
            {"sensitivity_se", json_number(rep.sensitivity_se)},
            {"predicted", json_number(rep.predicted)},
            {"predicted_cfi", json_number(rep.predicted_cfi)},
            {"estimates", json_array(rep.estimates)}};
}

}  // namespace

nlohmann::json GlobalOptions::to_json() const {
    return {{"r", r},       {"eps", eps},       {"tail_tol", tail_tol}, {"format", format},
            {"seed", seed}, {"serial", serial}, {"argv", argv}};
}

unsigned parse_mode(const std::string& mode) {
    if (mode == "exact") return kModeExact;
    if (mode == "approx") return kModeApprox;
    if (mode == "avg") return kModeAvg;
    if (mode == "all") return kModeAll;
    throw DomainError("unknown fisher mode '" + mode + "' (expected exact, approx, avg or all)");
}

void check_distribution(const std::vector<double>& p, double deficit, double tail_tol) {
    long double sum = 0.0L;
    for (std::size_t n = 0; n < p.size(); ++n) {
        if (!std::isfinite(p[n]) || p[n] < -1e-15) {
            throw InvariantViolation("positivity", "p[" + std::to_string(n) + "] = " + format_number(p[n]));
        }
        sum += p[n];
    }
    if (sum > 1.0L + 1e-12L) {
        throw InvariantViolation("normalization", "sum p_n = " + format_number(static_cast<double>(sum)));
    }
    if (deficit > tail_tol) {
        throw InvariantViolation("norm_deficit",
                                 "deficit " + format_number(deficit) + " exceeds tail_tol " + format_number(tail_tol));
    }
}

void check_fisher_curve(const FisherCurve& curve) {
    const SqueezedVacuumSpec spec(curve.r);
    const LossChannel channel(curve.epsilon);
    const double bound = displacement_qfi(spec, channel) * (1.0 + 1e-6);
    for (std::size_t i = 0; i < curve.x_grid.size(); ++i) {
        const std::string at = " at x = " + format_number(curve.x_grid[i]);
        for (const auto* col : {&curve.cfi_exact, &curve.ifisher_approx, &curve.i_avg}) {
            const double v = (*col)[i];
            if (std::isnan(v)) continue;
            if (v < -1e-9 * bound) throw InvariantViolation("fisher_positivity", format_number(v) + at);
        }
        const double cfi = curve.cfi_exact[i];
        if (!std::isnan(cfi) && cfi > bound) {
            throw InvariantViolation("cfi_le_qfi", "CFI " + format_number(cfi) + " above " + format_number(bound) + at);
        }
    }
}

std::vector<DipAnnotation> reported_dips(const FisherCurve& curve) {
    const double floor = kReportedDipDepth * (1.0 - curve.epsilon) * curve.qfi;
    std::vector<DipAnnotation> out;
    for (const auto& d : curve.dips) {
        if (d.depth >= floor) out.push_back(d);
    }
    return out;
}

void publish(const Destination& dest, const std::string& text, RunManifest manifest) {
    emit(dest, text);
    if (dest.to_stdout()) return;
    manifest.outputs = {dest.file.string()};
    write_manifest(manifest, manifest_path_for(dest.file));
}

void cmd_stats(const GlobalOptions& g, const StatsOptions& o) {
    const Format format = parse_format(g.format);
    if (!std::isfinite(o.x)) throw DomainError("x must be finite");
    const SqueezedVacuumSpec spec(g.r);
    const LossChannel channel(g.eps);
    const PhotonDistribution dist = lossy_distribution(o.x, spec, channel, g.tail_tol);
    check_distribution(dist.probs, dist.norm_deficit, g.tail_tol);

    RunManifest m = base_manifest("stats", g);
    m.parameters["x"] = o.x;

    std::string text;
    if (format == Format::kCsv) {
        Table t{{"n", "p"}, {}};
        for (std::size_t n = 0; n < dist.probs.size(); ++n) t.add({static_cast<double>(n), dist.probs[n]});
        text = render(t);
    } else {
        nlohmann::json j = {{"schema", "darkport.stats/1"},
                            {"r", g.r},
                            {"epsilon", g.eps},
                            {"x", o.x},
                            {"cutoff", dist.cutoff},
                            {"norm_deficit", dist.norm_deficit},
                            {"p", json_array(dist.probs)}};
        text = j.dump(2) + "\n";
    }
    publish(resolve_destination(g.out, format == Format::kCsv ? "stats.csv" : "stats.json"), text, m);
}

void cmd_zeros(const GlobalOptions& g, const ZerosOptions& o) {
    const Format format = parse_format(g.format);
    if (o.n_max < 0) throw DomainError("n-max must be >= 0");
    const SqueezedVacuumSpec spec(g.r);

    std::vector<ZeroPoint> rows;
    for (int n = 0; n <= o.n_max; ++n) {
        const ZeroSet zs = zeros(n, spec);
        if (zs.origin) rows.push_back({n, 0, 0.0});
        for (const auto& p : zs.positive) rows.push_back(p);
    }

    RunManifest m = base_manifest("zeros", g);
    m.parameters["n_max"] = o.n_max;

    std::string text;
    if (format == Format::kCsv) {
        Table t{{"n", "k", "x"}, {}};
        for (const auto& z : rows) t.add({static_cast<double>(z.n), static_cast<double>(z.k), z.x});
        text = render(t);
    } else {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& z : rows) a.push_back({{"n", z.n}, {"k", z.k}, {"x", z.x}});
        nlohmann::json j = {{"schema", "darkport.zeros/1"}, {"r", g.r}, {"n_max", o.n_max}, {"zeros", a}};
        text = j.dump(2) + "\n";
    }
    publish(resolve_destination(g.out, format == Format::kCsv ? "zeros.csv" : "zeros.json"), text, m);
}

void cmd_fisher(const GlobalOptions& g, const FisherOptions& o) {
    const Format format = parse_format(g.format);
    const unsigned mode = parse_mode(o.mode);
    if (!(std::isfinite(o.x_min) && std::isfinite(o.x_max) && o.x_min <= o.x_max)) {
        throw DomainError("need finite x-min <= x-max");
    }
    if (o.points < 1) throw DomainError("points must be >= 1");
    const SqueezedVacuumSpec spec(g.r);
    const LossChannel channel(g.eps);
    const FisherCurve curve = fisher_curve(linear_grid(o.x_min, o.x_max, o.points), spec, channel, mode, g.execution());
    check_fisher_curve(curve);

    RunManifest m = base_manifest("fisher", g);
    m.parameters["x_min"] = o.x_min;
    m.parameters["x_max"] = o.x_max;
    m.parameters["points"] = o.points;
    m.parameters["mode"] = o.mode;

    const double asymptote = channel.efficiency() * curve.qfi;
    std::string text;
    if (format == Format::kCsv) {
        Table t{{"x", "x_eff", "cfi_exact", "ifisher_approx", "i_avg", "qfi", "asymptote"}, {}};
        for (std::size_t i = 0; i < curve.x_grid.size(); ++i) {
            const double x = curve.x_grid[i];
            t.add({x, x * channel.x_eff_scale(), curve.cfi_exact[i], curve.ifisher_approx[i], curve.i_avg[i],
                   curve.qfi, asymptote});
        }
        std::ostringstream s;
        write_csv(t, s);
        for (const auto& d : reported_dips(curve)) {
            s << "# dip n=" << d.n << " k=" << d.k << " x=" << format_number(d.x_dip)
              << " depth=" << format_number(d.depth) << '\n';
        }
        text = s.str();
    } else {
        nlohmann::json j = {{"schema", "darkport.fisher/1"},
                            {"r", curve.r},
                            {"epsilon", curve.epsilon},
                            {"mode", o.mode},
                            {"qfi", curve.qfi},
                            {"asymptote", asymptote},
                            {"x", json_array(curve.x_grid)},
                            {"cfi_exact", json_array(curve.cfi_exact)},
                            {"ifisher_approx", json_array(curve.ifisher_approx)},
                            {"i_avg", json_array(curve.i_avg)},
                            {"dips", dips_json(reported_dips(curve))}};
        text = j.dump(2) + "\n";
    }
    publish(resolve_destination(g.out, format == Format::kCsv ? "fisher.csv" : "fisher.json"), text, m);
}

void cmd_simulate(const GlobalOptions& g, const SimulateOptions& o) {
    if (o.estimator != "mle" && o.estimator != "mean" && o.estimator != "both") {
        throw DomainError("unknown estimator '" + o.estimator + "' (expected mle, mean or both)");
    }
    ExperimentConfig cfg;
    cfg.r = g.r;
    cfg.epsilon = g.eps;
    cfg.x_true = o.x_true;
    cfg.n_samples = o.samples;
    cfg.n_trials = o.trials;
    cfg.seed = g.seed;
    const bool lo_set = std::isfinite(o.x_lo);
    const bool hi_set = std::isfinite(o.x_hi);
    if (lo_set != hi_set) throw DomainError("give both x-lo and x-hi or neither");
    if (lo_set) cfg.search_interval = SearchInterval{o.x_lo, o.x_hi};
    cfg.validate();

    nlohmann::json reports = nlohmann::json::array();
    if (o.estimator != "mean") reports.push_back(report_json(run_experiment(cfg, g.execution())));
    if (o.estimator != "mle") reports.push_back(report_json(run_avg_estimator(cfg, g.execution())));

    RunManifest m = base_manifest("simulate", g);
    m.parameters["x_true"] = o.x_true;
    m.parameters["samples"] = o.samples;
    m.parameters["trials"] = o.trials;
    m.parameters["estimator"] = o.estimator;
    m.parameters["x_lo"] = json_number(o.x_lo);
    m.parameters["x_hi"] = json_number(o.x_hi);

    nlohmann::json j = {{"schema", "darkport.simulate/1"}, {"r", g.r}, {"epsilon", g.eps}, {"reports", reports}};
    publish(resolve_destination(g.out, "simulate.json"), j.dump(2) + "\n", m);
}

}  // namespace darkport::cli
