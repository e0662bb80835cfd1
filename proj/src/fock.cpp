#include "darkport/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "darkport/error.hpp"

namespace darkport {

namespace {

constexpr double kRescaleHigh = 1e150;
constexpr double kRescaleLow = 1e-150;

double deficit_of(const std::vector<double>& probs) {
    long double sum = 0.0L;
    for (double p : probs) sum += p;
    return std::max(0.0, static_cast<double>(1.0L - sum));
}

std::size_t initial_cutoff(double x, const SqueezedVacuumSpec& spec, std::size_t min_cutoff) {
    const double start = spec.mean_photons(x) + 12.0 * std::sqrt(spec.photon_variance(x)) + 20.0;
    return std::max(min_cutoff, static_cast<std::size_t>(std::ceil(start)));
}

}  // namespace

double AmplitudeSet::value(std::size_t n) const {
    if (sign[n] == 0 || !std::isfinite(log_magnitude[n])) return 0.0;
    return sign[n] * std::exp(log_magnitude[n]);
}

std::vector<double> AmplitudeSet::linear() const {
    std::vector<double> out(cutoff + 1);
    for (std::size_t n = 0; n <= cutoff; ++n) out[n] = value(n);
    return out;
}

AmplitudeSet amplitudes(double x, const SqueezedVacuumSpec& spec, std::size_t cutoff) {
    const double gain = spec.displacement_gain();
    const double gamma = spec.gamma();
    const double w = 2.0 * gain * x;

    AmplitudeSet out;
    out.cutoff = cutoff;
    out.log_magnitude.assign(cutoff + 1, -std::numeric_limits<double>::infinity());
    out.sign.assign(cutoff + 1, 1);

    // c_n = v_n * exp(scale); v is renormalised whenever it leaves [1e-150, 1e150].
    double scale = -0.5 * std::log(std::cosh(spec.r())) - gain * x * x;
    double prev = 0.0;
    double cur = 1.0;
    auto record = [&](std::size_t n, double v) {
        if (v != 0.0) {
            out.log_magnitude[n] = std::log(std::abs(v)) + scale;
            out.sign[n] = v < 0.0 ? -1 : 1;
        }
    };
    record(0, cur);
    for (std::size_t n = 0; n < cutoff; ++n) {
        const double next = (w * cur - gamma * std::sqrt(static_cast<double>(n)) * prev) /
                            std::sqrt(static_cast<double>(n + 1));
        prev = cur;
        cur = next;
        const double big = std::max(std::abs(prev), std::abs(cur));
        if (big > kRescaleHigh || (big < kRescaleLow && big > 0.0)) {
            prev /= big;
            cur /= big;
            scale += std::log(big);
        }
        record(n + 1, cur);
    }
    long double sum = 0.0L;
    for (std::size_t n = 0; n <= cutoff; ++n) {
        const double v = out.value(n);
        sum += static_cast<long double>(v) * v;
    }
    out.norm_deficit = std::max(0.0, static_cast<double>(1.0L - sum));
    return out;
}

double amplitude(std::size_t n, double x, const SqueezedVacuumSpec& spec) {
    return amplitudes(x, spec, n).value(n);
}

std::size_t auto_cutoff(double x, const SqueezedVacuumSpec& spec, const CutoffPolicy& policy) {
    if (!(policy.tail_tol > 0.0)) throw DomainError("tail tolerance must be > 0");
    std::size_t cutoff = std::min(initial_cutoff(x, spec, policy.min_cutoff), policy.hard_limit);
    for (;;) {
        const AmplitudeSet amps = amplitudes(x, spec, cutoff);
        if (amps.norm_deficit <= policy.tail_tol) return cutoff;
        if (cutoff >= policy.hard_limit) {
            throw CutoffError("photon-number cutoff reached the hard limit " +
                                  std::to_string(policy.hard_limit) + " with norm deficit " +
                                  std::to_string(amps.norm_deficit),
                              amps.norm_deficit, cutoff);
        }
        cutoff = std::min(2 * cutoff, policy.hard_limit);
    }
}

PhotonDistribution distribution(double x, const SqueezedVacuumSpec& spec, double tail_tol) {
    CutoffPolicy policy;
    policy.tail_tol = tail_tol;
    return distribution(x, spec, policy);
}

PhotonDistribution distribution(double x, const SqueezedVacuumSpec& spec, const CutoffPolicy& policy) {
    return distribution_jet(x, spec, policy).dist;
}

DistributionJet distribution_jet(double x, const SqueezedVacuumSpec& spec, std::size_t cutoff) {
    // One extra amplitude so the recurrence for d c_n / dx is closed at n = cutoff.
    const std::vector<double> c = amplitudes(x, spec, cutoff).linear();
    const double two_gain = 2.0 * spec.displacement_gain();

    DistributionJet jet;
    jet.dist.cutoff = cutoff;
    jet.dist.probs.resize(cutoff + 1);
    jet.first.resize(cutoff + 1);
    jet.second.resize(cutoff + 1);
    jet.amp_derivative.resize(cutoff + 1);

    double prev_c = 0.0;
    double prev_dc = 0.0;
    for (std::size_t n = 0; n <= cutoff; ++n) {
        const double sn = std::sqrt(static_cast<double>(n));
        const double dc = two_gain * (sn * prev_c - x * c[n]);
        const double d2c = two_gain * (sn * prev_dc - c[n] - x * dc);
        jet.dist.probs[n] = c[n] * c[n];
        jet.first[n] = 2.0 * c[n] * dc;
        jet.second[n] = 2.0 * (dc * dc + c[n] * d2c);
        jet.amp_derivative[n] = dc;
        prev_c = c[n];
        prev_dc = dc;
    }
    jet.dist.norm_deficit = deficit_of(jet.dist.probs);
    return jet;
}

DistributionJet distribution_jet(double x, const SqueezedVacuumSpec& spec, const CutoffPolicy& policy) {
    return distribution_jet(x, spec, auto_cutoff(x, spec, policy));
}

std::vector<double> distribution_derivative(double x, const SqueezedVacuumSpec& spec, double tail_tol) {
    CutoffPolicy policy;
    policy.tail_tol = tail_tol;
    return distribution_jet(x, spec, policy).first;
}

PhotonMoments moments(const PhotonDistribution& dist) {
    long double mass = 0.0L;
    long double first = 0.0L;
    for (std::size_t n = 0; n < dist.probs.size(); ++n) {
        mass += dist.probs[n];
        first += static_cast<long double>(n) * dist.probs[n];
    }
    const long double mean = first / mass;
    long double second = 0.0L;
    for (std::size_t n = 0; n < dist.probs.size(); ++n) {
        const long double d = static_cast<long double>(n) - mean;
        second += d * d * dist.probs[n];
    }
    return {static_cast<double>(mean), static_cast<double>(second / mass)};
}

std::vector<double> hermite_positive_roots(int n) {
    if (n < 2) return {};
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(n - 1);
    for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(static_cast<double>(k));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

    std::vector<double> roots;
    roots.reserve(n / 2);
    // Eigenvalues come sorted ascending; the largest floor(n/2) are the positive roots.
    for (int i = n - 1; i >= n - n / 2; --i) {
        double z = solver.eigenvalues()[i];
        // Newton step on the orthonormal recurrence h_{k+1} = (z h_k - sqrt(k) h_{k-1}) / sqrt(k+1),
        // using He_n / He_n' = h_n / (sqrt(n) h_{n-1}).
        double prev = 0.0;
        double cur = 1.0;
        for (int k = 0; k < n; ++k) {
            const double next = (z * cur - std::sqrt(static_cast<double>(k)) * prev) /
                                std::sqrt(static_cast<double>(k + 1));
            prev = cur;
            cur = next;
            const double big = std::max(std::abs(prev), std::abs(cur));
            if (big > kRescaleHigh) {
                prev /= big;
                cur /= big;
            }
        }
        if (prev != 0.0) z -= cur / (std::sqrt(static_cast<double>(n)) * prev);
        roots.push_back(z);
    }
    return roots;
}

ZeroSet zeros(int n, const SqueezedVacuumSpec& spec) {
    ZeroSet out;
    if (n < 1) return out;
    if (spec.r() == 0.0) {
        out.origin = true;
        return out;
    }
    out.origin = (n % 2) == 1;
    const double to_x = 0.5 / spec.zeta();
    const std::vector<double> roots = hermite_positive_roots(n);
    for (std::size_t k = 0; k < roots.size(); ++k) {
        out.positive.push_back({n, static_cast<int>(k + 1), to_x * roots[k]});
    }
    return out;
}

std::vector<double> displaced_squeezed_number_amplitudes(int m, double x, const SqueezedVacuumSpec& spec,
                                                         std::size_t cutoff) {
    if (m != 0 && m != 1) {
        throw DomainError("squeezed number state index m must be 0 or 1, got " + std::to_string(m));
    }
    std::vector<double> c = amplitudes(x, spec, cutoff + 1).linear();
    if (m == 0) {
        c.resize(cutoff + 1);
        return c;
    }
    // D(x) S(r) a^dag S^dag D^dag = (a^dag - x) cosh r + (a - x) sinh r.
    const double ch = std::cosh(spec.r());
    const double sh = std::sinh(spec.r());
    std::vector<double> out(cutoff + 1);
    for (std::size_t n = 0; n <= cutoff; ++n) {
        const double down = n > 0 ? std::sqrt(static_cast<double>(n)) * c[n - 1] : 0.0;
        const double up = std::sqrt(static_cast<double>(n + 1)) * c[n + 1];
        out[n] = ch * down + sh * up - x * (ch + sh) * c[n];
    }
    return out;
}

double displaced_squeezed_number_amplitude(std::size_t n, int m, double x, const SqueezedVacuumSpec& spec) {
    return displaced_squeezed_number_amplitudes(m, x, spec, n)[n];
}

Eigen::VectorXd brute_force_state(int m, double x, const SqueezedVacuumSpec& spec, std::size_t dim) {
    if (m < 0 || static_cast<std::size_t>(m) >= dim) throw DomainError("number state outside the truncated space");
    const auto d = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index k = 1; k < d; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    const Eigen::MatrixXd ad = a.transpose();

    const Eigen::MatrixXd squeeze_gen = 0.5 * spec.r() * (a * a - ad * ad);
    const Eigen::MatrixXd displace_gen = x * (ad - a);

    Eigen::VectorXd state = Eigen::VectorXd::Zero(d);
    state[m] = 1.0;
    state = squeeze_gen.exp() * state;
    state = displace_gen.exp() * state;

    const Eigen::Index top = d - d / 4;
    const double tail = state.tail(d - top).squaredNorm();
    if (tail > 1e-12) {
        throw CutoffError("brute-force Fock space too small: " + std::to_string(tail) +
                              " of the norm lies in the top quarter",
                          tail, dim);
    }
    return state;
}

}  // namespace darkport
