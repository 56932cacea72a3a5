#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dcfci/dataset.hpp"
#include "dcfci/graph.hpp"

namespace dcfci {

// splitmix64 finalizer over (base, stream); independent streams per task
// so parallel scheduling never changes what a task draws.
std::uint64_t split_seed(std::uint64_t base, std::uint64_t stream);

struct GroundTruth {
    MixedGraph admg;
    MixedGraph mag;
    MixedGraph pag;
    std::uint64_t seed = 0;
    std::vector<int> order;  // causal order used for the directed edges
};

// MAG of an ADMG: a-b adjacent iff an inducing path joins them; tail at the
// ancestor, arrowheads where neither is an ancestor of the other.
MixedGraph admg_to_mag(const MixedGraph& admg);

// Each pair gets an edge with probability edge_density; an edge is
// bidirected with probability bidirected_fraction, else it follows a random
// causal order.
GroundTruth random_ground_truth(int p, double edge_density, double bidirected_fraction, std::uint64_t seed);

struct SemSpec {
    struct Edge {
        int from, to;
        double coef;
    };
    struct Latent {
        int a, b;
        double load_a, load_b;
    };
    std::vector<Edge> edges;
    std::vector<Latent> latents;
    std::vector<double> noise_sd;
    std::vector<int> order;
};

struct SemOptions {
    double min_abs = 0.2;
    double max_abs = 0.6;
};

// Coefficients with magnitude in [min_abs, max_abs] and a random sign, unit
// noise. Each bidirected edge gets a latent Gaussian with loadings whose
// product (the error covariance it induces) has magnitude in the same range.
SemSpec random_sem(const GroundTruth& gt, std::uint64_t seed, SemOptions opt = {});

Dataset sample_gaussian(const GroundTruth& gt, const SemSpec& spec, int n, std::uint64_t seed);

// Continuous nodes: linear plus Gaussian noise. Binary: logit of the
// linear predictor. Multinomial(K): class c in 1..K-1 has logit c times the
// linear predictor against class 0. A categorical parent enters through its
// code rescaled to [-1, 1].
Dataset sample_mixed(const GroundTruth& gt, const SemSpec& spec, const std::vector<VarKind>& kinds, int n,
                     std::uint64_t seed);

// Three continuous, then binary and multinomial(3) for the last two
// vertices (more continuous vertices when p > 5).
std::vector<VarKind> default_mixed_kinds(int p);

}  // namespace dcfci
