#include "darkport/loss.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <limits>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "darkport/error.hpp"

namespace darkport {

namespace {

// Kernel terms smaller than this fraction of the largest one are dropped.
constexpr double kKernelRelTol = 1e-22;

void require_loss(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw DomainError("loss probability must lie in [0, 1], got " + std::to_string(epsilon));
    }
}

std::vector<double> log_factorials(std::size_t n) {
    std::vector<double> out(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) out[k] = out[k - 1] + std::log(static_cast<double>(k));
    return out;
}

// Convolves several vectors with the same binomial kernel in one pass.
template <std::size_t M>
void convolve_loss(const std::array<const std::vector<double>*, M>& in, std::array<std::vector<double>*, M>& out,
                   double epsilon) {
    const std::size_t size = in[0]->size();
    for (auto* o : out) o->assign(size, 0.0);
    if (epsilon == 0.0) {
        for (std::size_t j = 0; j < M; ++j) *out[j] = *in[j];
        return;
    }
    if (epsilon == 1.0) {
        for (std::size_t j = 0; j < M; ++j) {
            long double s = 0.0L;
            for (double v : *in[j]) s += v;
            (*out[j])[0] = static_cast<double>(s);
        }
        return;
    }
    const std::vector<double> lf = log_factorials(size);
    const double le = std::log(epsilon);
    const double l1e = std::log1p(-epsilon);
    for (std::size_t n = 0; n < size; ++n) {
        std::array<long double, M> acc{};
        double peak = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; n + k < size; ++k) {
            const double lw = lf[n + k] - lf[n] - lf[k] + k * le + n * l1e;
            peak = std::max(peak, lw);
            // The kernel is unimodal in k; stop once it has fallen far below its peak.
            if (lw < peak + std::log(kKernelRelTol) && k > 0) break;
            const double w = std::exp(lw);
            for (std::size_t j = 0; j < M; ++j) acc[j] += w * (*in[j])[n + k];
        }
        for (std::size_t j = 0; j < M; ++j) (*out[j])[n] = static_cast<double>(acc[j]);
    }
}

double deficit_of(const std::vector<double>& probs) {
    long double sum = 0.0L;
    for (double p : probs) sum += p;
    return std::max(0.0, static_cast<double>(1.0L - sum));
}

}  // namespace

LossChannel::LossChannel(double epsilon) : epsilon_(epsilon) { require_loss(epsilon); }

double LossChannel::x_eff_scale() const noexcept { return std::sqrt(1.0 - epsilon_); }

double LossChannel::lambda(const SqueezedVacuumSpec& spec) const noexcept {
    const double sh = std::sinh(spec.r());
    const double s = std::sqrt(1.0 + 4.0 * epsilon_ * (1.0 - epsilon_) * sh * sh);
    return (s - 1.0) / (s + 1.0);
}

double LossChannel::r_eff(const SqueezedVacuumSpec& spec) const noexcept {
    const double eta = 1.0 - epsilon_;
    const double r = spec.r();
    return 0.25 * std::log((eta * std::exp(2.0 * r) + epsilon_) / (eta * std::exp(-2.0 * r) + epsilon_));
}

double LossChannel::beta(const SqueezedVacuumSpec& spec) const noexcept {
    const double sh = std::sinh(spec.r());
    return sh * sh * std::exp(-2.0 * r_eff(spec));
}

SqueezedVacuumSpec LossChannel::effective_spec(const SqueezedVacuumSpec& spec) const {
    return SqueezedVacuumSpec{std::max(0.0, r_eff(spec))};
}

std::vector<double> apply_loss(const std::vector<double>& probs, double epsilon) {
    require_loss(epsilon);
    std::vector<double> out;
    std::array<const std::vector<double>*, 1> in{&probs};
    std::array<std::vector<double>*, 1> o{&out};
    convolve_loss<1>(in, o, epsilon);
    return out;
}

PhotonDistribution lossy_distribution(double x, const SqueezedVacuumSpec& spec, const LossChannel& channel,
                                      double tail_tol) {
    CutoffPolicy policy;
    policy.tail_tol = tail_tol;
    return lossy_distribution(x, spec, channel, policy);
}

PhotonDistribution lossy_distribution(double x, const SqueezedVacuumSpec& spec, const LossChannel& channel,
                                      const CutoffPolicy& policy) {
    const PhotonDistribution pure = distribution(x, spec, policy);
    PhotonDistribution out;
    out.cutoff = pure.cutoff;
    out.probs = apply_loss(pure.probs, channel.epsilon());
    out.norm_deficit = deficit_of(out.probs);
    return out;
}

DistributionJet lossy_jet(double x, const SqueezedVacuumSpec& spec, const LossChannel& channel,
                          const CutoffPolicy& policy) {
    const DistributionJet pure = distribution_jet(x, spec, policy);
    DistributionJet out;
    out.dist.cutoff = pure.dist.cutoff;
    std::array<const std::vector<double>*, 3> in{&pure.dist.probs, &pure.first, &pure.second};
    std::array<std::vector<double>*, 3> o{&out.dist.probs, &out.first, &out.second};
    convolve_loss<3>(in, o, channel.epsilon());
    out.dist.norm_deficit = deficit_of(out.dist.probs);
    return out;
}

std::vector<double> lossy_distribution_derivative(double x, const SqueezedVacuumSpec& spec,
                                                  const LossChannel& channel, double tail_tol) {
    CutoffPolicy policy;
    policy.tail_tol = tail_tol;
    return lossy_jet(x, spec, channel, policy).first;
}

ThermalDecomposition thermal_decomposition(const SqueezedVacuumSpec& spec, const LossChannel& channel) {
    ThermalDecomposition out;
    out.lambda = channel.lambda(spec);
    out.r_eff = channel.r_eff(spec);
    double w = 1.0 - out.lambda;
    while (w >= 1e-14 || out.weights.empty()) {
        out.weights.push_back(w);
        if (out.lambda == 0.0) break;
        w *= out.lambda;
    }
    return out;
}

PhotonDistribution mixture_approx_distribution(double x, const SqueezedVacuumSpec& spec,
                                               const LossChannel& channel, double tail_tol) {
    const double eps = channel.epsilon();
    if (eps > kMixtureMaxLoss) {
        throw DomainError("mixture approximation is first order in the loss; eps = " + std::to_string(eps) +
                          " exceeds " + std::to_string(kMixtureMaxLoss));
    }
    if (eps > kMixtureWarnLoss) {
        std::clog << "warning: mixture approximation at eps = " << eps << " is outside its accurate range\n";
    }
    const SqueezedVacuumSpec eff = channel.effective_spec(spec);
    const double x_eff = channel.x_eff_scale() * x;
    const double sh = std::sinh(spec.r());
    const double w1 = eps * sh * sh;

    CutoffPolicy policy;
    policy.tail_tol = tail_tol;
    // Phi_1 carries one more photon than Phi_0 on average, so leave head room.
    const std::size_t cutoff = auto_cutoff(x_eff, eff, policy) + 16;
    const std::vector<double> c0 = displaced_squeezed_number_amplitudes(0, x_eff, eff, cutoff);
    const std::vector<double> c1 = displaced_squeezed_number_amplitudes(1, x_eff, eff, cutoff);

    PhotonDistribution out;
    out.cutoff = cutoff;
    out.probs.resize(cutoff + 1);
    for (std::size_t n = 0; n <= cutoff; ++n) out.probs[n] = (1.0 - w1) * c0[n] * c0[n] + w1 * c1[n] * c1[n];
    out.norm_deficit = deficit_of(out.probs);
    return out;
}

Eigen::MatrixXd apply_loss_kraus(const Eigen::MatrixXd& rho, double epsilon) {
    require_loss(epsilon);
    const Eigen::Index d = rho.rows();
    const std::vector<double> lf = log_factorials(static_cast<std::size_t>(d));
    // K_k only shifts |n> -> |n-k>, so (K_k rho K_k^T)(i, j) = w_k(i+k) w_k(j+k) rho(i+k, j+k).
    auto amp = [&](Eigen::Index n, Eigen::Index k) {
        if (epsilon == 0.0) return k == 0 ? 1.0 : 0.0;
        if (epsilon == 1.0) return n == k ? 1.0 : 0.0;
        return std::exp(0.5 * (lf[n] - lf[k] - lf[n - k] + k * std::log(epsilon) + (n - k) * std::log1p(-epsilon)));
    };
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
    Eigen::VectorXd w(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const Eigen::Index m = d - k;
        for (Eigen::Index i = 0; i < m; ++i) w[i] = amp(i + k, k);
        out.topLeftCorner(m, m).noalias() +=
            (w.head(m).asDiagonal() * rho.bottomRightCorner(m, m) * w.head(m).asDiagonal()).eval();
    }
    return out;
}

Eigen::MatrixXd density_operator_oracle(double x, const SqueezedVacuumSpec& spec, const LossChannel& channel,
                                        std::size_t dim) {
    const Eigen::VectorXd psi = brute_force_state(0, x, spec, dim);
    const double tail = psi.tail(static_cast<Eigen::Index>(dim / 4)).squaredNorm();
    if (tail > 1e-10) {
        throw CutoffError("oracle Fock space too small: tail " + std::to_string(tail), tail, dim);
    }
    return apply_loss_kraus(psi * psi.transpose(), channel.epsilon());
}

Eigen::MatrixXd displace_density(const Eigen::MatrixXd& rho, double x) {
    const Eigen::Index d = rho.rows();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index k = 1; k < d; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    const Eigen::MatrixXd gen = x * (a.transpose() - a);
    const Eigen::MatrixXd disp = gen.exp();
    return disp * rho * disp.transpose();
}

double trace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const Eigen::MatrixXd diff = 0.5 * ((a - b) + (a - b).transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(diff, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    const std::size_t n = std::max(p.size(), q.size());
    long double sum = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = i < p.size() ? p[i] : 0.0;
        const double b = i < q.size() ? q[i] : 0.0;
        sum += std::abs(a - b);
    }
    return static_cast<double>(0.5L * sum);
}

}  // namespace darkport
