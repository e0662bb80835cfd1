#include "darkport/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

#include "darkport/error.hpp"

namespace darkport {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

DistributionJet jet_for(double x, const SqueezedVacuumSpec& spec, const LossChannel& channel,
                        const CutoffPolicy& policy) {
    if (channel.epsilon() == 0.0) return distribution_jet(x, spec, policy);
    return lossy_jet(x, spec, channel, policy);
}

// I_n of the pure r_eff state at x_eff: (d p_n)^2 / p_n = 4 (d c_n)^2.
double pure_term(int n, double x_eff, const SqueezedVacuumSpec& eff) {
    const double dc = distribution_jet(x_eff, eff, static_cast<std::size_t>(n)).amp_derivative[n];
    return 4.0 * dc * dc;
}

double avg_from_jet(const DistributionJet& jet) {
    const PhotonMoments m = moments(jet.dist);
    long double slope = 0.0L;
    for (std::size_t n = 0; n < jet.first.size(); ++n) slope += static_cast<long double>(n) * jet.first[n];
    if (!(m.variance > 0.0)) return 0.0;
    return static_cast<double>(slope * slope) / m.variance;
}

struct OutcomeJet {
    double p = 0.0;
    double dp = 0.0;
};

OutcomeJet outcome_jet(int n, double x, const SqueezedVacuumSpec& spec, const LossChannel& channel) {
    CutoffPolicy policy;
    policy.min_cutoff = static_cast<std::size_t>(n) + 1;
    const DistributionJet jet = jet_for(x, spec, channel, policy);
    return {jet.dist.probs[n], jet.first[n]};
}

double predicted_half_width(const SqueezedVacuumSpec& spec, const LossChannel& channel) {
    return std::sqrt(channel.epsilon() * channel.beta(spec) / channel.efficiency());
}

double dip_guess(int n, int k, const SqueezedVacuumSpec& spec, const LossChannel& channel) {
    if (!(channel.epsilon() > 0.0 && channel.epsilon() < 1.0)) {
        throw DomainError("dip analysis requires 0 < eps < 1");
    }
    const ZeroSet zs = zeros(n, channel.effective_spec(spec));
    if (k < 1 || k > static_cast<int>(zs.positive.size())) {
        throw DomainError("p_" + std::to_string(n) + " has no positive zero with k = " + std::to_string(k));
    }
    return zs.positive[k - 1].x / channel.x_eff_scale();
}

template <class F>
double solve_bracketed(F f, double a, double b) {
    boost::uintmax_t iters = 200;
    const auto tol = boost::math::tools::eps_tolerance<double>(50);
    const auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, tol, iters);
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> fisher_terms(const DistributionJet& jet, bool pure, double p_floor) {
    const auto& p = jet.dist.probs;
    std::vector<double> terms(p.size(), 0.0);
    for (std::size_t n = 0; n < p.size(); ++n) {
        if (p[n] < 0.0) throw DomainError("negative probability at n = " + std::to_string(n));
        if (p[n] < p_floor) {
            if (pure && !jet.second.empty()) terms[n] = 2.0 * jet.second[n];
            continue;
        }
        terms[n] = jet.first[n] * jet.first[n] / p[n];
    }
    return terms;
}

double classical_fisher(const DistributionJet& jet, bool pure, double p_floor) {
    long double sum = 0.0L;
    for (double t : fisher_terms(jet, pure, p_floor)) sum += t;
    return static_cast<double>(sum);
}

double exact_fisher(double x, const SqueezedVacuumSpec& spec, const LossChannel& channel,
                    const CutoffPolicy& policy) {
    const bool pure = channel.epsilon() == 0.0;
    return classical_fisher(jet_for(x, spec, channel, policy), pure);
}

double quantum_fisher(const SqueezedVacuumSpec& spec, const LossChannel& channel) {
    const double eps = channel.epsilon();
    const double eta = 1.0 - eps;
    const double r = spec.r();
    return 4.0 * std::sqrt((eta * std::exp(2.0 * r) + eps) / (eta * std::exp(-2.0 * r) + eps));
}

double avg_photon_sensitivity(double x, const SqueezedVacuumSpec& spec, const LossChannel& channel,
                              const CutoffPolicy& policy) {
    return avg_from_jet(jet_for(x, spec, channel, policy));
}

double avg_photon_sensitivity_lossless(double x, const SqueezedVacuumSpec& spec) {
    const double chi = spec.chi_c();
    return spec.qfi() * x * x / (x * x + chi * chi);
}

ZeroTable::ZeroTable(const SqueezedVacuumSpec& spec, int n_max) : r_(spec.r()) {
    if (n_max < 0) throw DomainError("zero table size must be >= 0");
    sets_.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 1; n <= n_max; ++n) sets_[n] = zeros(n, spec);
}

const ZeroSet& ZeroTable::at(int n) const {
    if (n < 0 || n > n_max()) throw DomainError("zero table does not cover n = " + std::to_string(n));
    return sets_[n];
}

double reduction_factor(double x_eff, double eps_beta, const ZeroSet& zeros) {
    if (!(eps_beta > 0.0)) return 0.0;
    const double ax = std::abs(x_eff);
    double keep = 1.0;
    auto factor = [&](double x0) {
        const double t = ax - x0;
        keep *= t * t / (t * t + eps_beta);
    };
    for (const ZeroPoint& z : zeros.positive) factor(z.x);
    if (zeros.origin) factor(0.0);
    return 1.0 - keep;
}

double reduction_factor(int n, double x_eff, const SqueezedVacuumSpec& spec, const LossChannel& channel) {
    if (!(channel.epsilon() > 0.0)) throw DomainError("reduction factor requires eps > 0");
    return reduction_factor(x_eff, channel.epsilon() * channel.beta(spec), zeros(n, channel.effective_spec(spec)));
}

ApproxFisherBreakdown approx_fisher_breakdown(double x, const SqueezedVacuumSpec& spec, const LossChannel& channel,
                                              const ZeroTable* table) {
    ApproxFisherBreakdown out;
    const double eps = channel.epsilon();
    out.qfi = quantum_fisher(spec, channel);
    if (eps == 1.0) return out;

    const SqueezedVacuumSpec eff = channel.effective_spec(spec);
    const double x_eff = channel.x_eff_scale() * x;
    const DistributionJet jet = distribution_jet(x_eff, eff);
    const std::size_t cutoff = jet.dist.cutoff;
    out.pure_terms.resize(cutoff + 1);
    out.delta.assign(cutoff + 1, 0.0);
    for (std::size_t n = 0; n <= cutoff; ++n) out.pure_terms[n] = 4.0 * jet.amp_derivative[n] * jet.amp_derivative[n];

    if (eps > 0.0) {
        ZeroTable local(eff, 0);
        if (table == nullptr || table->n_max() < static_cast<int>(cutoff) || table->r() != eff.r()) {
            local = ZeroTable(eff, static_cast<int>(cutoff));
            table = &local;
        }
        const double eps_beta = eps * channel.beta(spec);
        long double dq = 0.0L;
        for (std::size_t n = 1; n <= cutoff; ++n) {
            out.delta[n] = reduction_factor(x_eff, eps_beta, table->at(static_cast<int>(n)));
            dq += out.pure_terms[n] * out.delta[n];
        }
        out.delta_q = static_cast<double>(dq);
    }
    out.value = channel.efficiency() * (out.qfi - out.delta_q);
    return out;
}

double approx_fisher(double x, const SqueezedVacuumSpec& spec, const LossChannel& channel, const ZeroTable* table) {
    return approx_fisher_breakdown(x, spec, channel, table).value;
}

std::vector<DipAnnotation> dip_annotations(const SqueezedVacuumSpec& spec, const LossChannel& channel, int n_max) {
    std::vector<DipAnnotation> out;
    if (!(channel.epsilon() > 0.0 && channel.epsilon() < 1.0)) return out;
    const SqueezedVacuumSpec eff = channel.effective_spec(spec);
    for (int n = 2; n <= n_max; ++n) {
        for (const ZeroPoint& z : zeros(n, eff).positive) {
            out.push_back({n, z.k, z.x / channel.x_eff_scale(), pure_term(n, z.x, eff)});
        }
    }
    std::sort(out.begin(), out.end(), [](const DipAnnotation& a, const DipAnnotation& b) {
        return a.x_dip < b.x_dip || (a.x_dip == b.x_dip && a.n < b.n);
    });
    return out;
}

OutcomeDip outcome_dip(int n, int k, const SqueezedVacuumSpec& spec, const LossChannel& channel) {
    const double x0 = dip_guess(n, k, spec, channel);
    const double w = predicted_half_width(spec, channel);
    auto slope = [&](double x) { return outcome_jet(n, x, spec, channel).dp; };

    // P_n has a minimum near x0: dP_n/dx goes from negative to positive.
    double a = x0 - w;
    double b = x0 + w;
    for (int i = 0; i < 40 && !(slope(a) < 0.0 && slope(b) > 0.0); ++i) {
        a = x0 - w * (1.0 + 0.25 * i);
        b = x0 + w * (1.0 + 0.25 * i);
    }
    if (!(slope(a) < 0.0 && slope(b) > 0.0)) {
        throw DomainError("could not bracket the minimum of P_" + std::to_string(n));
    }
    OutcomeDip out;
    out.x = solve_bracketed(slope, a, b);
    const OutcomeJet j = outcome_jet(n, out.x, spec, channel);
    out.term = j.p > 0.0 ? j.dp * j.dp / j.p : 0.0;
    return out;
}

double dip_half_width(int n, int k, const SqueezedVacuumSpec& spec, const LossChannel& channel) {
    const OutcomeDip centre = outcome_dip(n, k, spec, channel);
    const SqueezedVacuumSpec eff = channel.effective_spec(spec);
    const double w = predicted_half_width(spec, channel);
    auto recovery = [&](double x) {
        const OutcomeJet j = outcome_jet(n, x, spec, channel);
        const double exact = j.dp * j.dp / j.p;
        const double lossless = channel.efficiency() * pure_term(n, channel.x_eff_scale() * x, eff);
        return exact / lossless - 0.5;
    };
    double total = 0.0;
    for (double side : {-1.0, 1.0}) {
        double reach = w;
        while (recovery(centre.x + side * reach) < 0.0) {
            reach *= 1.5;
            if (reach > 50.0 * w) throw DomainError("dip of P_" + std::to_string(n) + " does not recover");
        }
        const double edge = solve_bracketed(recovery, std::min(centre.x, centre.x + side * reach),
                                            std::max(centre.x, centre.x + side * reach));
        total += std::abs(edge - centre.x);
    }
    return 0.5 * total;
}

double fitted_sharpness(int n, int k, const SqueezedVacuumSpec& spec, const LossChannel& channel) {
    const double w = dip_half_width(n, k, spec, channel);
    return channel.efficiency() * w * w / channel.epsilon();
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
    if (points == 0) return {};
    if (points == 1) return {lo};
    std::vector<double> out(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) out[i] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

FisherCurve fisher_curve(const std::vector<double>& x_grid, const SqueezedVacuumSpec& spec,
                         const LossChannel& channel, unsigned mode, Execution exec) {
    FisherCurve curve;
    curve.r = spec.r();
    curve.epsilon = channel.epsilon();
    curve.x_grid = x_grid;
    curve.qfi = quantum_fisher(spec, channel);
    const std::size_t count = x_grid.size();
    curve.cfi_exact.assign(count, kNaN);
    curve.ifisher_approx.assign(count, kNaN);
    curve.i_avg.assign(count, kNaN);
    if (count == 0) return curve;

    const SqueezedVacuumSpec eff = channel.effective_spec(spec);
    int n_max = 0;
    for (double x : x_grid) {
        n_max = std::max(n_max, static_cast<int>(auto_cutoff(channel.x_eff_scale() * x, eff)));
    }
    const bool need_zeros = (mode & kModeApprox) && channel.epsilon() > 0.0 && channel.epsilon() < 1.0;
    const ZeroTable table(eff, need_zeros ? n_max : 0);

    auto point = [&](std::size_t i) {
        const double x = x_grid[i];
        if (mode & (kModeExact | kModeAvg)) {
            const DistributionJet jet = jet_for(x, spec, channel, {});
            if (mode & kModeExact) curve.cfi_exact[i] = classical_fisher(jet, channel.epsilon() == 0.0);
            if (mode & kModeAvg) curve.i_avg[i] = avg_from_jet(jet);
        }
        if (mode & kModeApprox) curve.ifisher_approx[i] = approx_fisher(x, spec, channel, &table);
    };

    if (exec == Execution::kSerial) {
        for (std::size_t i = 0; i < count; ++i) point(i);
    } else {
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < count; ++i) {
            try {
                point(i);
            } catch (...) {
#pragma omp critical(darkport_fisher_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    }

    if (channel.epsilon() > 0.0 && channel.epsilon() < 1.0) {
        const auto [lo, hi] = std::minmax_element(x_grid.begin(), x_grid.end());
        for (const DipAnnotation& d : dip_annotations(spec, channel, n_max)) {
            if (d.x_dip >= *lo && d.x_dip <= *hi) curve.dips.push_back(d);
        }
    }
    return curve;
}

}  // namespace darkport
