#pragma once

#include <vector>

#include "dcfci/graph.hpp"

namespace dcfci {

// Per unordered pair: 1 when exactly one graph has the edge, otherwise the
// number of differing endpoint marks.
int shd(const MixedGraph& inferred, const MixedGraph& truth);

// Definite claims are tails, arrowheads and missing edges; a claim is wrong
// when the truth disagrees. 0/0 gives 0.
double fdr(const MixedGraph& inferred, const MixedGraph& truth);

// Circle claims are wrong when the truth has a tail or arrowhead there or
// no edge at all. 0/0 gives 0.
double for_rate(const MixedGraph& inferred, const MixedGraph& truth);

// Exact two-sided sign test on paired samples, ties dropped.
double sign_test(const std::vector<double>& a, const std::vector<double>& b);

// P(X <= k) for X ~ Binomial(n, 1/2).
double binomial_half_cdf(int k, int n);

}  // namespace dcfci
