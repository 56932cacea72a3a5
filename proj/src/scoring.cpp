#include "dcfci/scoring.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "dcfci/pag_mag.hpp"

namespace dcfci {

void HypothesisSet::insert(const CITestKey& key, HypothesisKind kind) {
    auto [it, added] = map_.emplace(key, kind);
    if (!added && it->second != kind) throw GraphError("hypothesis set holds both kinds for one test");
}

void HypothesisSet::merge(const HypothesisSet& other) {
    for (const auto& [k, kind] : other) insert(k, kind);
}

std::uint64_t pairwise_hypothesis_count(int p, int r_max) {
    if (p < 2) return 0;
    const int m = p - 2;
    r_max = std::min(r_max, m);
    std::uint64_t sets = 0, c = 1;
    for (int k = 0; k <= r_max; ++k) {
        sets += c;
        c = c * (m - k) / (k + 1);
    }
    return static_cast<std::uint64_t>(p) * (p - 1) / 2 * sets;
}

ScoreBounds frechet_bounds(const std::vector<double>& probs) {
    if (probs.empty()) return {1, 1};
    double sum = 0, lo = 1;
    for (double v : probs) {
        if (!(v >= 0 && v <= 1)) throw std::invalid_argument("probability outside [0,1]");
        sum += v;
        lo = std::min(lo, v);
    }
    double lower = std::max(0.0, sum - static_cast<double>(probs.size() - 1));
    return {std::min(lower, lo), lo};
}

namespace {

VarSet others(int p, int x, int y) {
    VarSet out;
    for (int v = 0; v < p; ++v)
        if (v != x && v != y) out.push_back(v);
    return out;
}

}  // namespace

HypothesisSet all_pairwise_hypotheses(const MSeparation& sep, int r_max) {
    HypothesisSet out;
    const int p = sep.graph().size();
    for (int x = 0; x < p; ++x)
        for (int y = x + 1; y < p; ++y) {
            VarSet pool = others(p, x, y);
            for (int k = 0; k <= std::min<int>(r_max, pool.size()); ++k)
                for_each_subset(pool, k, [&](const VarSet& z) {
                    out.insert(CITestKey{x, y, z}, sep.separated(x, y, z) ? HypothesisKind::Independence
                                                                          : HypothesisKind::Dependence);
                    return false;
                });
        }
    return out;
}

HypothesisSet skeleton_hypotheses(const MSeparation& sep, const SepSetMap& minseps, int r) {
    HypothesisSet out;
    const MixedGraph& g = sep.graph();
    const int p = g.size();
    for (const auto& [pair, sets] : minseps.entries())
        if (g.adjacent(pair.first, pair.second)) throw GraphError("separator recorded for an adjacent pair");
    for (int x = 0; x < p; ++x)
        for (int y = x + 1; y < p; ++y) {
            if (!g.adjacent(x, y)) continue;
            VarSet pool = others(p, x, y);
            for (int k = 0; k <= std::min<int>(r, pool.size()); ++k)
                for_each_subset(pool, k, [&](const VarSet& z) {
                    out.insert(CITestKey{x, y, z}, HypothesisKind::Dependence);
                    return false;
                });
        }
    for (const auto& [pair, sets] : minseps.entries())
        for (const auto& s : sets) {
            out.insert(CITestKey{pair.first, pair.second, s}, HypothesisKind::Independence);
            for (std::size_t i = 0; i < s.size(); ++i) {
                VarSet less = s;
                less.erase(less.begin() + static_cast<long>(i));
                out.insert(CITestKey{pair.first, pair.second, less}, HypothesisKind::Dependence);
            }
        }
    return out;
}

HypothesisSet collider_hypotheses(const MixedGraph& pag, const SepSetMap& minseps) {
    HypothesisSet out;
    for (const auto& t : triples_with_order(pag)) {
        if (t.kind != TripleKind::Collider) continue;
        for (auto [x, y] : corresponds(pag, t.triple)) {
            if (!minseps.has(x, y)) continue;
            for (const auto& s : minseps.get(x, y)) {
                VarSet z = s;
                if (std::find(z.begin(), z.end(), t.triple.b) == z.end()) {
                    z.push_back(t.triple.b);
                    std::sort(z.begin(), z.end());
                }
                out.insert(CITestKey{x, y, z}, HypothesisKind::Dependence);
            }
        }
    }
    return out;
}

ScoredPag pag_hypotheses(const MixedGraph& pag, int r) {
    auto check = check_pag(pag);
    if (!check.valid) throw GraphError("not a valid PAG (" + check.failed_stage + ")");
    auto sep = MSeparation::for_valid_pag(pag, *check.member_mag);
    auto minseps = minimal_separator_map(sep, r);
    auto h = skeleton_hypotheses(sep, minseps, r);
    h.merge(collider_hypotheses(pag, minseps));
    return {std::move(sep), std::move(minseps), std::move(h)};
}

double hypothesis_probability(Evidence& ev, const CITestKey& key, HypothesisKind kind) {
    auto post = ev.posterior(key);
    return kind == HypothesisKind::Independence ? post.p_h0 : post.p_h1;
}

ScoreBounds straightforward_score(const MixedGraph& pag, Evidence& ev) {
    auto check = check_pag(pag);
    if (!check.valid) throw GraphError("not a valid PAG (" + check.failed_stage + ")");
    auto sep = MSeparation::for_valid_pag(pag, *check.member_mag);
    std::vector<double> probs;
    for (const auto& [key, kind] : all_pairwise_hypotheses(sep, pag.size() - 2))
        probs.push_back(hypothesis_probability(ev, key, kind));
    return frechet_bounds(probs);
}

std::vector<ComparableScore> comparable_scores(const std::vector<MixedGraph>& candidates, int r, Evidence& ev,
                                               Execution ex) {
    const int n = static_cast<int>(candidates.size());
    if (n == 0) throw std::invalid_argument("comparable_scores needs at least one candidate");
    std::vector<std::optional<ScoredPag>> scored(n);
    parallel_for(n, ex, [&](int i) { scored[i] = pag_hypotheses(candidates[i], r); });

    // relations in the union, kinds per candidate
    std::vector<CITestKey> keys;
    {
        std::map<CITestKey, bool> all;
        for (const auto& s : scored)
            for (const auto& [k, kind] : s->hypotheses) all.emplace(k, true);
        for (auto& [k, unused] : all) keys.push_back(k);
    }
    std::vector<std::vector<HypothesisKind>> kinds(n, std::vector<HypothesisKind>(keys.size()));
    parallel_for(n, ex, [&](int i) {
        for (std::size_t j = 0; j < keys.size(); ++j)
            kinds[i][j] = scored[i]->sep.separated(keys[j].x, keys[j].y, keys[j].z) ? HypothesisKind::Independence
                                                                                    : HypothesisKind::Dependence;
    });
    std::vector<std::size_t> diff;
    for (std::size_t j = 0; j < keys.size(); ++j) {
        bool same = true;
        for (int i = 1; i < n && same; ++i) same = kinds[i][j] == kinds[0][j];
        if (!same) diff.push_back(j);
    }
    std::vector<ComparableScore> out(n);
    parallel_for(n, ex, [&](int i) {
        std::vector<double> probs;
        for (std::size_t j : diff) probs.push_back(hypothesis_probability(ev, keys[j], kinds[i][j]));
        out[i] = {frechet_bounds(probs), diff.size()};
    });
    return out;
}

std::vector<int> rank_candidates(const std::vector<ScoreBounds>& scores, const std::vector<std::string>& tiebreak) {
    std::vector<int> idx(scores.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (scores[a].upper != scores[b].upper) return scores[a].upper > scores[b].upper;
        if (scores[a].lower != scores[b].lower) return scores[a].lower > scores[b].lower;
        return tiebreak[a] < tiebreak[b];
    });
    return idx;
}

}  // namespace dcfci
