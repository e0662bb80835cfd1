#include "darkport/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <string>

#include "darkport/error.hpp"

namespace darkport {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

template <class F>
void for_trials(std::size_t n_trials, Execution exec, F body) {
    if (exec == Execution::kSerial) {
        for (std::size_t t = 0; t < n_trials; ++t) body(t);
        return;
    }
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t t = 0; t < n_trials; ++t) {
        try {
            body(t);
        } catch (...) {
#pragma omp critical(darkport_trial_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

double mean_squared_error(const std::vector<double>& estimates, double x_true) {
    long double sum = 0.0L;
    for (double e : estimates) sum += (e - x_true) * (e - x_true);
    return static_cast<double>(sum / estimates.size());
}

void fill_summary(EstimationReport& rep) {
    rep.mse = mean_squared_error(rep.estimates, rep.x_true);
    rep.sensitivity = 1.0 / (static_cast<double>(rep.n_samples) * rep.mse);
    rep.sensitivity_se = jackknife_sensitivity_se(rep.estimates, rep.x_true, rep.n_samples);
}

}  // namespace

void ExperimentConfig::validate() const {
    SqueezedVacuumSpec{r};
    LossChannel{epsilon};
    if (n_samples == 0) throw DomainError("n_samples must be >= 1");
    if (n_trials == 0) throw DomainError("n_trials must be >= 1");
    if (!std::isfinite(x_true)) throw DomainError("x_true must be finite");
    if (search_interval) {
        if (!(search_interval->lo < search_interval->hi)) throw DomainError("search interval must have lo < hi");
        if (x_true < search_interval->lo || x_true > search_interval->hi) {
            throw DomainError("x_true lies outside the search interval");
        }
    }
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(trial)));
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<std::uint64_t> sample(const PhotonDistribution& dist, std::size_t n_samples, std::mt19937_64& rng) {
    const auto& p = dist.probs;
    std::vector<double> cdf(p.size());
    long double acc = 0.0L;
    for (std::size_t n = 0; n < p.size(); ++n) {
        acc += p[n];
        cdf[n] = static_cast<double>(acc);
    }
    const double total = cdf.empty() ? 0.0 : cdf.back();
    if (!(total > 0.0)) throw DomainError("cannot sample an empty distribution");
    std::vector<std::uint64_t> counts(p.size(), 0);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double u = uniform01(rng) * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        ++counts[static_cast<std::size_t>(it - cdf.begin())];
    }
    return counts;
}

std::vector<std::uint64_t> sample(const PhotonDistribution& dist, std::size_t n_samples, std::uint64_t seed) {
    std::mt19937_64 rng = trial_rng(seed, 0);
    return sample(dist, n_samples, rng);
}

double log_likelihood(const std::vector<std::uint64_t>& counts, double x, const SqueezedVacuumSpec& spec,
                      const LossChannel& channel) {
    std::size_t top = 0;
    for (std::size_t n = 0; n < counts.size(); ++n) {
        if (counts[n] > 0) top = n;
    }
    CutoffPolicy policy;
    policy.min_cutoff = top;
    const PhotonDistribution dist = lossy_distribution(x, spec, channel, policy);
    long double ll = 0.0L;
    for (std::size_t n = 0; n <= top; ++n) {
        if (counts[n] == 0) continue;
        if (!(dist.probs[n] > 0.0)) return -std::numeric_limits<double>::infinity();
        ll += static_cast<long double>(counts[n]) * std::log(dist.probs[n]);
    }
    return static_cast<double>(ll);
}

double mle_estimate(const std::vector<std::uint64_t>& counts, const SqueezedVacuumSpec& spec,
                    const LossChannel& channel, const SearchInterval& interval, const MleOptions& options) {
    if (std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}) == 0) {
        throw EstimationError("no counts to estimate from");
    }
    if (!(interval.lo < interval.hi)) throw EstimationError("empty search interval");
    if (options.grid_points < 3) throw EstimationError("MLE grid needs at least 3 points");

    const std::vector<double> grid = linear_grid(interval.lo, interval.hi, options.grid_points);
    std::vector<double> ll(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) ll[i] = log_likelihood(counts, grid[i], spec, channel);

    const auto best_it = std::max_element(ll.begin(), ll.end());
    const auto worst_it = std::min_element(ll.begin(), ll.end());
    if (!std::isfinite(*best_it)) {
        throw EstimationError("log-likelihood is -inf on the whole interval [" + std::to_string(interval.lo) + ", " +
                              std::to_string(interval.hi) + "]");
    }
    if (std::isfinite(*worst_it) && *best_it - *worst_it <= 1e-12 * std::max(1.0, std::abs(*best_it))) {
        throw EstimationError("log-likelihood is flat on the search interval (spread " +
                              std::to_string(*best_it - *worst_it) + ")");
    }

    const std::size_t ib = static_cast<std::size_t>(best_it - ll.begin());
    double a = grid[ib == 0 ? 0 : ib - 1];
    double b = grid[std::min(ib + 1, grid.size() - 1)];
    auto f = [&](double x) { return log_likelihood(counts, x, spec, channel); };

    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > options.tolerance) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    double x_hat = 0.5 * (a + b);
    double best = f(x_hat);
    // A maximum on the boundary stays on the boundary.
    for (double edge : {interval.lo, interval.hi}) {
        if (std::abs(edge - x_hat) <= options.tolerance) {
            const double fe = f(edge);
            if (fe >= best) {
                best = fe;
                x_hat = edge;
            }
        }
    }
    if (ll[ib] > best) x_hat = grid[ib];
    return x_hat;
}

SearchInterval default_interval(double x_true, std::size_t n_samples, double cfi) {
    const double spread = cfi > 0.0 ? 5.0 / std::sqrt(static_cast<double>(n_samples) * cfi) : 0.0;
    return {std::max(0.0, x_true - spread - 0.5), x_true + spread + 0.5};
}

double jackknife_sensitivity_se(const std::vector<double>& estimates, double x_true, std::size_t n_samples) {
    const std::size_t t = estimates.size();
    if (t < 2) return std::numeric_limits<double>::infinity();
    long double total = 0.0L;
    for (double e : estimates) total += (e - x_true) * (e - x_true);
    std::vector<double> loo(t);
    long double mean = 0.0L;
    for (std::size_t i = 0; i < t; ++i) {
        const long double sq = (estimates[i] - x_true) * (estimates[i] - x_true);
        const double mse = static_cast<double>((total - sq) / (t - 1));
        loo[i] = 1.0 / (static_cast<double>(n_samples) * mse);
        mean += loo[i];
    }
    mean /= t;
    long double var = 0.0L;
    for (double v : loo) var += (v - mean) * (v - mean);
    return std::sqrt(static_cast<double>(var * (t - 1) / t));
}

EstimationReport run_experiment(const ExperimentConfig& cfg, Execution exec) {
    cfg.validate();
    const SqueezedVacuumSpec spec(cfg.r);
    const LossChannel channel(cfg.epsilon);

    EstimationReport rep;
    rep.method = "mle";
    rep.x_true = cfg.x_true;
    rep.n_samples = cfg.n_samples;
    rep.n_trials = cfg.n_trials;
    rep.seed = cfg.seed;
    rep.predicted_cfi = exact_fisher(cfg.x_true, spec, channel);
    rep.predicted = rep.predicted_cfi;
    rep.interval = cfg.search_interval.value_or(default_interval(cfg.x_true, cfg.n_samples, rep.predicted_cfi));

    const PhotonDistribution dist = lossy_distribution(cfg.x_true, spec, channel);
    rep.estimates.assign(cfg.n_trials, 0.0);
    for_trials(cfg.n_trials, exec, [&](std::size_t t) {
        std::mt19937_64 rng = trial_rng(cfg.seed, t);
        const std::vector<std::uint64_t> counts = sample(dist, cfg.n_samples, rng);
        rep.estimates[t] = mle_estimate(counts, spec, channel, rep.interval);
    });
    fill_summary(rep);
    return rep;
}

double invert_mean_photons(double mean, const SqueezedVacuumSpec& spec, const LossChannel& channel) {
    if (!(channel.efficiency() > 0.0)) throw EstimationError("mean photon number carries no information at eps = 1");
    const double sh = std::sinh(spec.r());
    const double x_sq = mean / channel.efficiency() - sh * sh;
    if (x_sq < 0.0) {
        throw EstimationError("sample mean " + std::to_string(mean) + " is below the squeezed-vacuum floor " +
                              std::to_string(channel.efficiency() * sh * sh));
    }
    return std::sqrt(x_sq);
}

EstimationReport run_avg_estimator(const ExperimentConfig& cfg, Execution exec) {
    cfg.validate();
    if (!(cfg.x_true > 0.0)) throw DomainError("mean-photon estimator requires x_true > 0");
    const SqueezedVacuumSpec spec(cfg.r);
    const LossChannel channel(cfg.epsilon);

    EstimationReport rep;
    rep.method = "mean-photon";
    rep.x_true = cfg.x_true;
    rep.n_samples = cfg.n_samples;
    rep.n_trials = cfg.n_trials;
    rep.seed = cfg.seed;
    rep.predicted_cfi = exact_fisher(cfg.x_true, spec, channel);
    rep.predicted = avg_photon_sensitivity(cfg.x_true, spec, channel);
    rep.interval = cfg.search_interval.value_or(SearchInterval{0.0, std::numeric_limits<double>::infinity()});

    const PhotonDistribution dist = lossy_distribution(cfg.x_true, spec, channel);
    rep.estimates.assign(cfg.n_trials, 0.0);
    for_trials(cfg.n_trials, exec, [&](std::size_t t) {
        std::mt19937_64 rng = trial_rng(cfg.seed, t);
        const std::vector<std::uint64_t> counts = sample(dist, cfg.n_samples, rng);
        long double total = 0.0L;
        for (std::size_t n = 0; n < counts.size(); ++n) total += static_cast<long double>(n) * counts[n];
        const double mean = static_cast<double>(total / cfg.n_samples);
        rep.estimates[t] = invert_mean_photons(mean, spec, channel);
    });
    fill_summary(rep);
    return rep;
}

}  // namespace darkport
