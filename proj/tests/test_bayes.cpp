#include <doctest.h>

#include <cmath>

#include "dcfci/bayes.hpp"
#include "dcfci/chi_square.hpp"
#include "dcfci/evidence.hpp"
#include "example_ci.hpp"

using namespace dcfci;

TEST_CASE("tabulated posteriors are reproduced from the p-values") {
    TableEvidence ev(4, example_ci::kN);
    for (const auto& r : example_ci::rows()) ev.add(CITestKey::make(r.x, r.y, r.z), r.p_value);
    for (const auto& r : example_ci::rows()) {
        auto post = ev.posterior(CITestKey::make(r.x, r.y, r.z));
        INFO("row p=" << r.p_value);
        CHECK(std::abs(post.p_h0 - r.p_h0) < 5e-4);
    }
}

TEST_CASE("Bayes factor behaviour") {
    CHECK(bayes_factor_chisq(0.0, 1, 10000) < 1.0);
    double prev = -1e300;
    for (double h = 0; h < 60; h += 0.5) {
        double l = log_bayes_factor_chisq(h, 1, 10000);
        CHECK(l > prev);
        prev = l;
    }
    CHECK(log_bayes_factor_chisq(1e6, 1, 10000) == doctest::Approx(kMaxLogBf));
    CHECK(std::isfinite(log_bayes_factor_chisq(std::numeric_limits<double>::infinity(), 2, 100)));
    CHECK_THROWS(log_bayes_factor_chisq(-1, 1, 100));
    CHECK_THROWS(log_bayes_factor_chisq(1, 0, 100));
    // huge statistic: dependence is certain
    auto p = posterior_from_log_bf(log_bayes_factor_chisq(1e6, 1, 10000));
    CHECK(p.p_h1 == doctest::Approx(1.0));
    CHECK(p.p_h0 < 1e-200);
}

TEST_CASE("posteriors sum to one") {
    for (double lbf : {-700.0, -30.0, -1.0, 0.0, 0.3, 12.0, 700.0})
        for (double prior : {0.1, 0.5, 0.9}) {
            auto p = posterior_from_log_bf(lbf, prior);
            CHECK(std::abs(p.p_h0 + p.p_h1 - 1.0) < 1e-12);
        }
    auto even = posterior_from_log_bf(0.0);
    CHECK(even.p_h0 == doctest::Approx(0.5));
}

TEST_CASE("the narrower omega grid cannot reproduce the table") {
    // with omega starting at 0.10 small statistics look strongly independent
    double h = chi_square_isf(0.496, 1);
    auto wide = posterior_from_log_bf(log_bayes_factor_chisq(h, 1, 10000, 0.10));
    auto fine = posterior_from_log_bf(log_bayes_factor_chisq(h, 1, 10000, 0.01));
    CHECK(wide.p_h0 > 0.9);
    CHECK(fine.p_h0 == doctest::Approx(0.672).epsilon(1e-3));
}
