#pragma once

namespace dcfci {

// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);
double log_gamma_q(double a, double x);

double chi_square_sf(double x, double df);
double chi_square_log_sf(double x, double df);

// Smallest x with log sf(x) <= log_p; +inf for log_p = -inf.
double chi_square_isf_log(double log_p, double df);
double chi_square_isf(double p, double df);

}  // namespace dcfci
