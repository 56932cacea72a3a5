#include "dcfci/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "dcfci/pag_mag.hpp"
#include "dcfci/separation.hpp"

namespace dcfci {

std::uint64_t split_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

std::vector<std::string> default_names(int p) {
    std::vector<std::string> n;
    for (int i = 0; i < p; ++i) n.push_back("V" + std::to_string(i + 1));
    return n;
}

// Path from a to b on which every inner vertex is a collider and an
// ancestor of a or b.
bool inducing_path(const MixedGraph& g, int a, int b, Mask anc) {
    Mask seen = bit(a);
    std::vector<int> stack;
    for (Mask m = g.neighbors(a); m; m &= m - 1) {
        int w = std::countr_zero(m);
        if (w == b) return true;
        if (g.mark(a, w) == Mark::Arrowhead && (anc & bit(w))) {
            seen |= bit(w);
            stack.push_back(w);
        }
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (Mask m = g.neighbors(v); m; m &= m - 1) {
            int u = std::countr_zero(m);
            if (g.mark(u, v) != Mark::Arrowhead) continue;
            if (u == b) return true;
            if ((seen & bit(u)) || g.mark(v, u) != Mark::Arrowhead || !(anc & bit(u))) continue;
            seen |= bit(u);
            stack.push_back(u);
        }
    }
    return false;
}

}  // namespace

MixedGraph admg_to_mag(const MixedGraph& admg) {
    const int p = admg.size();
    MixedGraph mag(admg.names());
    for (int a = 0; a < p; ++a)
        for (int b = a + 1; b < p; ++b) {
            Mask anc = ancestors(admg, bit(a) | bit(b));
            if (!inducing_path(admg, a, b, anc)) continue;
            bool a_anc = ancestors(admg, bit(b)) & bit(a);
            bool b_anc = ancestors(admg, bit(a)) & bit(b);
            if (a_anc)
                mag.set_edge(a, b, Mark::Tail, Mark::Arrowhead);
            else if (b_anc)
                mag.set_edge(a, b, Mark::Arrowhead, Mark::Tail);
            else
                mag.set_edge(a, b, Mark::Arrowhead, Mark::Arrowhead);
        }
    return mag;
}

GroundTruth random_ground_truth(int p, double edge_density, double bidirected_fraction, std::uint64_t seed) {
    if (p < 2 || p > kMaxVertices) throw std::invalid_argument("p out of range");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0, 1);
    GroundTruth gt;
    gt.seed = seed;
    gt.order.resize(p);
    std::iota(gt.order.begin(), gt.order.end(), 0);
    std::shuffle(gt.order.begin(), gt.order.end(), rng);
    gt.admg = MixedGraph(default_names(p));
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            double draw_edge = u(rng), draw_kind = u(rng);
            if (draw_edge >= edge_density) continue;
            int a = gt.order[i], b = gt.order[j];
            if (draw_kind < bidirected_fraction)
                gt.admg.set_edge(a, b, Mark::Arrowhead, Mark::Arrowhead);
            else
                gt.admg.set_edge(a, b, Mark::Tail, Mark::Arrowhead);
        }
    gt.mag = admg_to_mag(gt.admg);
    gt.pag = mag_to_pag(gt.mag);
    return gt;
}

SemSpec random_sem(const GroundTruth& gt, std::uint64_t seed, SemOptions opt) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(opt.min_abs, opt.max_abs);
    std::bernoulli_distribution sign(0.5);
    auto draw = [&] {
        double v = mag(rng);
        return sign(rng) ? v : -v;
    };
    const MixedGraph& g = gt.admg;
    SemSpec s;
    s.order = gt.order;
    s.noise_sd.assign(g.size(), 1.0);
    for (int a = 0; a < g.size(); ++a)
        for (int b = a + 1; b < g.size(); ++b) {
            if (!g.adjacent(a, b)) continue;
            if (g.bidirected(a, b)) {
                // shared latent whose induced error covariance obeys the same floor
                double rho = draw();
                double l = std::sqrt(std::abs(rho));
                s.latents.push_back({a, b, rho < 0 ? -l : l, l});
            } else if (g.directed(a, b)) {
                s.edges.push_back({a, b, draw()});
            } else {
                s.edges.push_back({b, a, draw()});
            }
        }
    return s;
}

std::vector<VarKind> default_mixed_kinds(int p) {
    std::vector<VarKind> k(p, VarKind::cont());
    if (p >= 2) k[p - 2] = VarKind::binary();
    if (p >= 1) k[p - 1] = VarKind::multinomial(3);
    return k;
}

Dataset sample_mixed(const GroundTruth& gt, const SemSpec& spec, const std::vector<VarKind>& kinds, int n,
                     std::uint64_t seed) {
    const int p = gt.admg.size();
    if (static_cast<int>(kinds.size()) != p) throw std::invalid_argument("one kind per vertex required");
    if (n < 1) throw std::invalid_argument("n must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> u(0, 1);

    std::vector<std::vector<double>> values(p, std::vector<double>(n));
    std::vector<std::vector<double>> latent(spec.latents.size(), std::vector<double>(n));
    for (auto& l : latent)
        for (double& v : l) v = nd(rng);

    auto signal = [&](int v, int i) {
        double x = values[v][i];
        if (kinds[v].continuous()) return x;
        return 2.0 * x / (kinds[v].levels - 1) - 1.0;
    };
    for (int v : spec.order) {
        std::vector<double> eta(n, 0.0);
        for (const auto& e : spec.edges)
            if (e.to == v)
                for (int i = 0; i < n; ++i) eta[i] += e.coef * signal(e.from, i);
        for (std::size_t j = 0; j < spec.latents.size(); ++j) {
            const auto& l = spec.latents[j];
            double w = l.a == v ? l.load_a : (l.b == v ? l.load_b : 0.0);
            if (w != 0)
                for (int i = 0; i < n; ++i) eta[i] += w * latent[j][i];
        }
        auto& out = values[v];
        if (kinds[v].continuous()) {
            for (int i = 0; i < n; ++i) out[i] = eta[i] + spec.noise_sd[v] * nd(rng);
        } else {
            const int K = kinds[v].levels;
            std::vector<double> w(K);
            for (int i = 0; i < n; ++i) {
                double mx = 0;
                for (int c = 0; c < K; ++c) w[c] = c * eta[i], mx = std::max(mx, w[c]);
                double tot = 0;
                for (int c = 0; c < K; ++c) tot += (w[c] = std::exp(w[c] - mx));
                double r = u(rng) * tot;
                int c = 0;
                while (c < K - 1 && r >= w[c]) r -= w[c++];
                out[i] = c;
            }
        }
    }
    std::vector<Column> cols;
    for (int v = 0; v < p; ++v) cols.push_back({gt.admg.name(v), kinds[v], std::move(values[v])});
    return Dataset(std::move(cols));
}

Dataset sample_gaussian(const GroundTruth& gt, const SemSpec& spec, int n, std::uint64_t seed) {
    return sample_mixed(gt, spec, std::vector<VarKind>(gt.admg.size(), VarKind::cont()), n, seed);
}

}  // namespace dcfci
