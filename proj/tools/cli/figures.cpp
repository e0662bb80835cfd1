#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "commands.hpp"
#include "darkport/error.hpp"
#include "darkport/estimation.hpp"
#include "darkport/fock.hpp"
#include "darkport/loss.hpp"
#include "darkport/semiclassics.hpp"

namespace darkport::cli {

namespace {

// Collects the files of one figure and its manifest.
class FigureWriter {
public:
    FigureWriter(const GlobalOptions& g, const FigureOptions& o)
        : dir_(resolve_outdir(g.outdir)), id_(o.id), gnuplot_(o.gnuplot) {
        manifest_.command = "figure";
        manifest_.parameters = g.to_json();
        manifest_.parameters["id"] = o.id;
        manifest_.parameters["samples"] = o.samples;
        manifest_.parameters["trials"] = o.trials;
        manifest_.seed = g.seed;
        manifest_.has_seed = true;
    }

    void param(const std::string& key, nlohmann::json value) { manifest_.parameters["figure"][key] = std::move(value); }

    std::string table(const std::string& suffix, const Table& t) {
        const std::string name = id_ + "_" + suffix + ".csv";
        std::ostringstream s;
        write_csv(t, s);
        write(name, s.str());
        return name;
    }

    void script(const std::string& text) {
        if (gnuplot_) write(id_ + ".gp", "set datafile separator ','\nset key autotitle columnhead\n" + text);
    }

    void finish() { write_manifest(manifest_, dir_ / (id_ + ".manifest.json")); }

private:
    void write(const std::string& name, const std::string& text) {
        emit({dir_ / name}, text);
        manifest_.outputs.push_back((dir_ / name).string());
    }

    std::filesystem::path dir_;
    std::string id_;
    bool gnuplot_;
    RunManifest manifest_;
};

double first_zero(int n, const SqueezedVacuumSpec& spec) {
    const ZeroSet zs = zeros(n, spec);
    if (zs.positive.empty()) throw DomainError("p_" + std::to_string(n) + " has no positive zero");
    return zs.positive.front().x;
}

Table dips_table(const std::vector<DipAnnotation>& dips, double eps) {
    Table t{{"eps", "n", "k", "x_dip", "depth"}, {}};
    for (const auto& d : dips) t.add({eps, double(d.n), double(d.k), d.x_dip, d.depth});
    return t;
}

void fig3(const GlobalOptions& g, FigureWriter& w) {
    const SqueezedVacuumSpec spec(1.0);
    const int n_max = 10;
    w.param("r", 1.0);
    w.param("n_max", n_max);

    Table series{{"x", "n", "p", "stacked", "x_sq"}, {}};
    const auto grid = linear_grid(0.0, 3.5, 351);
    for (double x : grid) {
        const PhotonDistribution d = distribution(x, spec, g.tail_tol);
        check_distribution(d.probs, d.norm_deficit, g.tail_tol);
        for (int n = 0; n <= n_max; ++n) {
            const double p = static_cast<std::size_t>(n) < d.probs.size() ? d.probs[n] : 0.0;
            series.add({x, double(n), p, n + 0.5 + p, x * x});
        }
    }
    w.table("series", series);

    Table markers{{"n", "k", "x", "stacked"}, {}};
    for (int n = 0; n <= n_max; ++n) {
        const ZeroSet zs = zeros(n, spec);
        if (zs.origin) markers.add({double(n), 0.0, 0.0, n + 0.5});
        for (const auto& z : zs.positive) markers.add({double(n), double(z.k), z.x, n + 0.5});
    }
    w.table("zeros", markers);

    for (int n : {4, 6}) {
        const double x = first_zero(n, spec);
        w.param("x_" + std::to_string(n) + "_1", x);
        const PhotonDistribution d = distribution(x, spec, g.tail_tol);
        Table panel{{"n", "p"}, {}};
        for (std::size_t m = 0; m < d.probs.size(); ++m) panel.add({double(m), d.probs[m]});
        w.table("panel_x" + std::to_string(n) + "1", panel);
    }
    w.script("plot 'fig3_series.csv' using 1:($2<=10?$4:1/0) with lines title 'p_n + n + 1/2', \\\n"
             "     'fig3_series.csv' using 1:5 with lines title 'x^2', \\\n"
             "     'fig3_zeros.csv' using 3:4 with points pt 6 title 'x_{n,k}'\n");
}

void fig5(const GlobalOptions& g, FigureWriter& w) {
    const SqueezedVacuumSpec spec(g.r);
    const double ratio = chi_deltaY(spec) / spec.chi_c();
    w.param("r", g.r);
    w.param("chi_dY_over_chi_c", ratio);

    Table grid{{"u", "v", "x_over_chi_c", "value"}, {}};
    for (double u : linear_grid(0.05, 3.0, 60)) {
        for (double v : linear_grid(0.0, 4.0, 81)) grid.add({u, v, u * ratio, minima_contour_value(u, v)});
    }
    w.table("grid", grid);

    // Integer levels S/pi + 1/4 = k: v = (4 u (k - 1/4) / 3)^(1/3).
    Table levels{{"level", "u", "v"}, {}};
    for (int k = 1; k <= 6; ++k) {
        for (double u : linear_grid(0.05, 3.0, 60)) levels.add({double(k), u, std::cbrt(4.0 * u * (k - 0.25) / 3.0)});
    }
    w.table("levels", levels);

    Table marks{{"label", "u", "x_over_chi_c"}, {}};
    marks.add({0.0, 1.0, ratio});
    marks.add({1.0, 1.0 / ratio, 1.0});
    w.table("markers", marks);
    w.script("set view map\nsplot 'fig5_grid.csv' using 1:2:4 with pm3d title 'S/pi + 1/4'\n");
}

void fig6(const GlobalOptions& g, FigureWriter& w) {
    const SqueezedVacuumSpec spec(0.8);
    w.param("r", 0.8);
    const std::vector<std::pair<std::string, double>> panels = {
        {"a", first_zero(4, spec)}, {"b", first_zero(6, spec)}, {"c", spec.chi_c()}};

    Table marks{{"panel", "x", "n_min1", "nbar", "nbar_plus_2dn"}, {}};
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const double x = panels[i].second;
        w.param("x_" + panels[i].first, x);
        const PhotonDistribution d = distribution(x, spec, g.tail_tol);
        check_distribution(d.probs, d.norm_deficit, g.tail_tol);
        const WkbApprox wkb = wkb_distribution(x, spec, d.cutoff);
        Table t{{"n", "exact", "wkb", "envelope", "gaussian"}, {}};
        for (std::size_t n = 0; n < d.probs.size(); ++n) {
            t.add({double(n), d.probs[n], wkb.approx_probs[n], wkb.envelope[n], gaussian_approx(double(n), x, spec)});
        }
        w.table("panel_" + panels[i].first, t);
        const double nbar = spec.mean_photons(x);
        marks.add({double(i), x, n_of_minimum(1, x, spec), nbar, nbar + 2.0 * std::sqrt(spec.photon_variance(x))});
    }
    w.table("markers", marks);
    w.script("set style fill solid 0.4\nplot 'fig6_panel_a.csv' using 1:2 with boxes, '' using 1:3 with points pt 5, "
             "'' using 1:4 with lines dt 2, '' using 1:5 with points pt 7\n");
}

void fig7a(const GlobalOptions& g, FigureWriter& w) {
    const SqueezedVacuumSpec spec(1.0);
    w.param("r", 1.0);
    Table t{{"x", "eps", "x_eff", "ifisher_approx", "asymptote"}, {}};
    const auto grid = linear_grid(0.0, 4.0, 161);
    for (double eps : linear_grid(0.0, 0.05, 21)) {
        const LossChannel channel(eps);
        const FisherCurve c = fisher_curve(grid, spec, channel, kModeApprox, g.execution());
        check_fisher_curve(c);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            t.add({grid[i], eps, grid[i] * channel.x_eff_scale(), c.ifisher_approx[i], channel.efficiency() * c.qfi});
        }
    }
    w.table("surface", t);
    w.script("set view map\nsplot 'fig7a_surface.csv' using 1:2:4 with pm3d\n");
}

void fig7_curve(const GlobalOptions& g, const FigureOptions& o, FigureWriter& w, double eps, bool with_mc) {
    const SqueezedVacuumSpec spec(1.0);
    const LossChannel channel(eps);
    w.param("r", 1.0);
    w.param("eps", eps);
    const FisherCurve c =
        fisher_curve(linear_grid(0.02, 4.0, 200), spec, channel, kModeExact | kModeApprox, g.execution());
    check_fisher_curve(c);
    const double asym = channel.efficiency() * c.qfi;
    Table t{{"x", "x_eff", "cfi_exact", "ifisher_approx", "asymptote", "delta_q"}, {}};
    for (std::size_t i = 0; i < c.x_grid.size(); ++i) {
        const double x = c.x_grid[i];
        t.add({x, x * channel.x_eff_scale(), c.cfi_exact[i], c.ifisher_approx[i], asym, asym - c.ifisher_approx[i]});
    }
    w.table("curve", t);
    w.table("dips", dips_table(reported_dips(c), eps));

    std::string plot = "plot '" + o.id + "_curve.csv' using 2:3 with lines, '' using 2:4 with lines, "
                       "'' using 2:5 with lines dt 2";
    if (with_mc) {
        Table mc{{"x", "x_eff", "sensitivity", "sensitivity_se", "predicted_cfi", "seed"}, {}};
        const auto xs = linear_grid(0.5, 4.0, 15);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            ExperimentConfig cfg;
            cfg.r = 1.0;
            cfg.epsilon = eps;
            cfg.x_true = xs[i];
            cfg.n_samples = o.samples;
            cfg.n_trials = o.trials;
            cfg.seed = g.seed + i;
            const EstimationReport rep = run_experiment(cfg, g.execution());
            mc.add({xs[i], xs[i] * channel.x_eff_scale(), rep.sensitivity, rep.sensitivity_se, rep.predicted_cfi,
                    double(cfg.seed)});
        }
        w.table("mc", mc);
        plot += ", '" + o.id + "_mc.csv' using 2:3:4 with yerrorbars pt 6";
    }
    w.script(plot + "\n");
}

void fig8(const GlobalOptions& g, FigureWriter& w, double r, double x_max) {
    const SqueezedVacuumSpec spec(r);
    w.param("r", r);
    w.param("chi_c", spec.chi_c());
    Table t{{"x", "eps", "cfi_exact", "ifisher_approx", "i_avg", "asymptote"}, {}};
    Table dips{{"eps", "n", "k", "x_dip", "depth"}, {}};
    for (double eps : {0.002, 0.05}) {
        const LossChannel channel(eps);
        const FisherCurve c = fisher_curve(linear_grid(0.01, x_max, 300), spec, channel, kModeAll, g.execution());
        check_fisher_curve(c);
        for (std::size_t i = 0; i < c.x_grid.size(); ++i) {
            t.add({c.x_grid[i], eps, c.cfi_exact[i], c.ifisher_approx[i], c.i_avg[i], channel.efficiency() * c.qfi});
        }
        for (const auto& row : dips_table(reported_dips(c), eps).rows) dips.add(row);
    }
    const std::string f = w.table("curves", t);
    w.table("dips", dips);
    w.script("plot for [e in '0.002 0.05'] '" + f + "' using 1:($2==e?$3:1/0) with lines title 'CFI eps='.e, \\\n"
             "     for [e in '0.002 0.05'] '" + f + "' using 1:($2==e?$5:1/0) with lines dt 4 title 'I_avg eps='.e, \\\n"
             "     for [e in '0.002 0.05'] '" + f + "' using 1:($2==e?$6:1/0) with lines dt 2 title 'asymptote eps='.e\n");
}

using FigureFn = std::function<void(const GlobalOptions&, const FigureOptions&, FigureWriter&)>;

const std::map<std::string, FigureFn>& registry() {
    static const std::map<std::string, FigureFn> figs = {
        {"fig3", [](auto& g, auto&, auto& w) { fig3(g, w); }},
        {"fig5", [](auto& g, auto&, auto& w) { fig5(g, w); }},
        {"fig6", [](auto& g, auto&, auto& w) { fig6(g, w); }},
        {"fig7a", [](auto& g, auto&, auto& w) { fig7a(g, w); }},
        {"fig7b", [](auto& g, auto& o, auto& w) { fig7_curve(g, o, w, 0.002, true); }},
        {"fig7c", [](auto& g, auto& o, auto& w) { fig7_curve(g, o, w, 0.01, false); }},
        {"fig7d", [](auto& g, auto& o, auto& w) { fig7_curve(g, o, w, 0.05, false); }},
        {"fig8a", [](auto& g, auto&, auto& w) { fig8(g, w, 0.5, 3.0); }},
        {"fig8b", [](auto& g, auto&, auto& w) { fig8(g, w, 0.21, 1.5); }},
    };
    return figs;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"fig3",  "fig5",  "fig6",  "fig7a", "fig7b",
                                                 "fig7c", "fig7d", "fig8a", "fig8b"};
    return ids;
}

void cmd_figure(const GlobalOptions& g, const FigureOptions& o) {
    const auto it = registry().find(o.id);
    if (it == registry().end()) {
        std::string valid;
        for (const auto& id : figure_ids()) valid += (valid.empty() ? "" : ", ") + id;
        throw DomainError("unknown figure id '" + o.id + "'; valid ids: " + valid);
    }
    if (o.samples == 0 || o.trials == 0) throw DomainError("samples and trials must be >= 1");
    FigureWriter w(g, o);
    it->second(g, o, w);
    w.finish();
}

}  // namespace darkport::cli
