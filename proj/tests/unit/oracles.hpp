#pragma once

// Reference computations that share no code with the library.

#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

// <n|psi> for n = 0..n_max by trapezoidal quadrature of the position wavefunctions,
// with X = (a + a^dag)/2 so that psi_0(q) ~ exp(-q^2).
// m = 0: psi(q) = e^{r/2} phi_0(e^r (q - x)); m = 1: the same with phi_1.
inline std::vector<double> overlap_amplitudes(int m, double x, double r, int n_max) {
    const double pi = std::numbers::pi;
    const double width = 0.5 * std::exp(-r);  // position spread of the squeezed state
    const double lo = std::min(x - 12.0 * width, -std::sqrt(n_max + 1.0) - 6.0);
    const double hi = std::max(x + 12.0 * width, std::sqrt(n_max + 1.0) + 6.0);
    const int points = 40000;
    const double h = (hi - lo) / points;
    const double norm0 = std::pow(2.0 / pi, 0.25);

    std::vector<long double> out(n_max + 1, 0.0L);
    std::vector<double> phi(n_max + 1);
    for (int i = 0; i <= points; ++i) {
        const double q = lo + i * h;
        // Normalised Hermite functions: phi_{k+1} = (2 q phi_k - sqrt(k) phi_{k-1}) / sqrt(k+1).
        phi[0] = norm0 * std::exp(-q * q);
        if (n_max >= 1) phi[1] = 2.0 * q * phi[0];
        for (int k = 1; k < n_max; ++k) phi[k + 1] = (2.0 * q * phi[k] - std::sqrt(double(k)) * phi[k - 1]) / std::sqrt(k + 1.0);

        const double s = std::exp(r) * (q - x);
        double psi = std::exp(0.5 * r) * norm0 * std::exp(-s * s);
        if (m == 1) psi *= 2.0 * s;
        const double wgt = (i == 0 || i == points) ? 0.5 : 1.0;
        for (int k = 0; k <= n_max; ++k) out[k] += wgt * h * phi[k] * psi;
    }
    return {out.begin(), out.end()};
}

inline double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// P_n = sum_m C(m, n) (1 - eps)^n eps^(m - n) p_m, summed directly.
inline std::vector<double> binomial_loss(const std::vector<double>& p, double eps) {
    std::vector<double> out(p.size(), 0.0);
    for (std::size_t m = 0; m < p.size(); ++m) {
        for (std::size_t n = 0; n <= m; ++n) {
            double w;
            if (eps == 0.0) w = (n == m) ? 1.0 : 0.0;
            else if (eps == 1.0) w = (n == 0) ? 1.0 : 0.0;
            else w = std::exp(log_binomial(int(m), int(n)) + n * std::log1p(-eps) + (m - n) * std::log(eps));
            out[n] += w * p[m];
        }
    }
    return out;
}

}  // namespace oracle
