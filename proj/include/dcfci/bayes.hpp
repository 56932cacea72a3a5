#pragma once

#include "dcfci/ci_test.hpp"

namespace dcfci {

struct PosteriorPair {
    double p_h0 = 0.5;  // independence
    double p_h1 = 0.5;  // dependence
};

struct BffOptions {
    double omega_min = 0.01;
    double prior_h0 = 0.5;
};

inline constexpr double kMaxLogBf = 690.7755278982137;  // log(1e300)

// log BF10 for a chi-square statistic with df degrees of freedom and sample
// size n, maximised over omega in {omega_min, omega_min + 0.01, ..., 1}.
double log_bayes_factor_chisq(double statistic, int df, double n, double omega_min = 0.01);
double bayes_factor_chisq(double statistic, int df, double n, double omega_min = 0.01);

PosteriorPair posterior_from_log_bf(double log_bf10, double prior_h0 = 0.5);
PosteriorPair posterior(const CITestResult& r, double n, const BffOptions& opt = {});

}  // namespace dcfci
