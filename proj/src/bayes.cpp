#include "dcfci/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dcfci {

double log_bayes_factor_chisq(double statistic, int df, double n, double omega_min) {
    if (df < 1) throw std::domain_error("bayes factor: df must be positive");
    if (!(n > 0)) throw std::domain_error("bayes factor: sample size must be positive");
    if (std::isnan(statistic) || statistic < 0) throw std::domain_error("bayes factor: statistic must be >= 0");
    if (!(omega_min > 0 && omega_min <= 1)) throw std::domain_error("bayes factor: omega_min outside (0,1]");
    if (std::isinf(statistic)) return kMaxLogBf;
    const double k = df;
    double best = -std::numeric_limits<double>::infinity();
    const int steps = static_cast<int>(std::floor((1.0 - omega_min) / 0.01 + 1e-9));
    for (int i = 0; i <= steps; ++i) {
        double omega = omega_min + 0.01 * i;
        double tau2 = n * omega * omega / k;
        double z = tau2 * statistic / (2.0 * (1.0 + tau2));
        // (1+tau2)^(-k/2-1) * 1F1(k/2+1; k/2; z), with 1F1(a+1; a; z) = e^z (1 + z/a)
        double lbf = -(k / 2.0 + 1.0) * std::log1p(tau2) + z + std::log1p(2.0 * z / k);
        best = std::max(best, lbf);
    }
    return std::clamp(best, -kMaxLogBf, kMaxLogBf);
}

double bayes_factor_chisq(double statistic, int df, double n, double omega_min) {
    return std::exp(log_bayes_factor_chisq(statistic, df, n, omega_min));
}

PosteriorPair posterior_from_log_bf(double log_bf10, double prior_h0) {
    if (!(prior_h0 > 0 && prior_h0 < 1)) throw std::domain_error("prior must lie in (0,1)");
    // P(H0) = 1 / (1 + BF10 * pi1 / pi0)
    double t = log_bf10 + std::log1p(-prior_h0) - std::log(prior_h0);
    PosteriorPair out;
    if (t > 0) {
        double e = std::exp(-t);
        out.p_h0 = e / (1.0 + e);
        out.p_h1 = 1.0 / (1.0 + e);
    } else {
        double e = std::exp(t);
        out.p_h0 = 1.0 / (1.0 + e);
        out.p_h1 = e / (1.0 + e);
    }
    return out;
}

PosteriorPair posterior(const CITestResult& r, double n, const BffOptions& opt) {
    return posterior_from_log_bf(log_bayes_factor_chisq(r.statistic, r.df, n, opt.omega_min), opt.prior_h0);
}

}  // namespace dcfci
