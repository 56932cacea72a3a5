#include "dcfci/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace dcfci {

namespace {

void same_vertices(const MixedGraph& a, const MixedGraph& b) {
    if (a.names() != b.names()) throw GraphError("graphs have different vertex sets");
}

}  // namespace

int shd(const MixedGraph& inferred, const MixedGraph& truth) {
    same_vertices(inferred, truth);
    int d = 0;
    for (int a = 0; a < truth.size(); ++a)
        for (int b = a + 1; b < truth.size(); ++b) {
            bool ei = inferred.adjacent(a, b), et = truth.adjacent(a, b);
            if (ei != et) {
                ++d;
            } else if (ei) {
                d += inferred.mark(a, b) != truth.mark(a, b);
                d += inferred.mark(b, a) != truth.mark(b, a);
            }
        }
    return d;
}

double fdr(const MixedGraph& inferred, const MixedGraph& truth) {
    same_vertices(inferred, truth);
    int claims = 0, wrong = 0;
    for (int a = 0; a < truth.size(); ++a)
        for (int b = a + 1; b < truth.size(); ++b) {
            if (!inferred.adjacent(a, b)) {
                ++claims;
                wrong += truth.adjacent(a, b);
                continue;
            }
            for (auto [from, at] : {std::pair{a, b}, std::pair{b, a}}) {
                Mark m = inferred.mark(from, at);
                if (m == Mark::Circle) continue;
                ++claims;
                wrong += !truth.adjacent(a, b) || truth.mark(from, at) != m;
            }
        }
    return claims ? static_cast<double>(wrong) / claims : 0.0;
}

double for_rate(const MixedGraph& inferred, const MixedGraph& truth) {
    same_vertices(inferred, truth);
    int claims = 0, wrong = 0;
    for (int a = 0; a < truth.size(); ++a)
        for (Mask m = inferred.neighbors(a); m; m &= m - 1) {
            int b = std::countr_zero(m);
            if (inferred.mark(b, a) != Mark::Circle) continue;
            ++claims;
            wrong += !truth.adjacent(a, b) || truth.mark(b, a) != Mark::Circle;
        }
    return claims ? static_cast<double>(wrong) / claims : 0.0;
}

double binomial_half_cdf(int k, int n) {
    if (k < 0) return 0;
    if (k >= n) return 1;
    double total = 0;
    for (int i = 0; i <= k; ++i)
        total += std::exp(std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) - n * std::log(2.0));
    return std::min(1.0, total);
}

double sign_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sign test needs paired samples");
    int plus = 0, minus = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) ++plus;
        if (a[i] < b[i]) ++minus;
    }
    int n = plus + minus;
    if (n == 0) return 1.0;
    return std::min(1.0, 2.0 * binomial_half_cdf(std::min(plus, minus), n));
}

}  // namespace dcfci
