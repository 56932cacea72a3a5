#include "dcfci/chi_square.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dcfci {

namespace {

constexpr int kMaxTerms = 10000;
constexpr double kEps = 1e-16;

// log P(a, x) by the power series, valid for x < a + 1.
double log_p_series(double a, double x) {
    double term = 1.0 / a, sum = term;
    for (int n = 1; n < kMaxTerms; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return -x + a * std::log(x) - std::lgamma(a) + std::log(sum);
}

// log Q(a, x) by the Lentz continued fraction, valid for x >= a + 1.
double log_q_fraction(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < kMaxTerms; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return -x + a * std::log(x) - std::lgamma(a) + std::log(h);
}

}  // namespace

double log_gamma_q(double a, double x) {
    if (!(a > 0)) throw std::domain_error("gamma_q: shape must be positive");
    if (std::isnan(x)) throw std::domain_error("gamma_q: NaN argument");
    if (x <= 0) return 0.0;
    if (std::isinf(x)) return -std::numeric_limits<double>::infinity();
    if (x < a + 1.0) return std::log1p(-std::exp(log_p_series(a, x)));
    return log_q_fraction(a, x);
}

double gamma_q(double a, double x) { return std::exp(log_gamma_q(a, x)); }

double chi_square_log_sf(double x, double df) {
    if (!(df > 0)) throw std::domain_error("chi_square_sf: df must be positive");
    if (x <= 0) return 0.0;
    return log_gamma_q(0.5 * df, 0.5 * x);
}

double chi_square_sf(double x, double df) { return std::exp(chi_square_log_sf(x, df)); }

double chi_square_isf_log(double log_p, double df) {
    if (!(df > 0)) throw std::domain_error("chi_square_isf: df must be positive");
    if (std::isnan(log_p)) throw std::domain_error("chi_square_isf: NaN probability");
    if (log_p >= 0) return 0.0;
    if (std::isinf(log_p)) return std::numeric_limits<double>::infinity();
    double lo = 0, hi = std::max(1.0, df);
    while (chi_square_log_sf(hi, df) > log_p) {
        lo = hi;
        hi *= 2;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        if (chi_square_log_sf(mid, df) > log_p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double chi_square_isf(double p, double df) {
    if (!(p >= 0 && p <= 1)) throw std::domain_error("chi_square_isf: probability outside [0,1]");
    return chi_square_isf_log(p > 0 ? std::log(p) : -std::numeric_limits<double>::infinity(), df);
}

}  // namespace dcfci
