#include "dcfci/search.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "dcfci/fci.hpp"
#include "dcfci/pag_mag.hpp"

namespace dcfci {

void validate(const DcfciConfig& cfg, int p) {
    if (!(cfg.alpha > 0 && cfg.alpha < 1)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (cfg.k < 1) throw std::invalid_argument("k must be at least 1");
    if (cfg.r_max > p - 2) throw std::invalid_argument("r_max must not exceed p-2");
    if (cfg.n_r_cap < 1 || cfg.n_r_cap > 20) throw std::invalid_argument("n_r_cap must lie in [1,20]");
    if (p < 2) throw std::invalid_argument("need at least two variables");
}

TieMode parse_tie_mode(const std::string& s) {
    if (s == "strict") return TieMode::Strict;
    if (s == "equal-upper") return TieMode::EqualUpper;
    if (s == "overlap") return TieMode::Overlap;
    throw std::invalid_argument("unknown tie mode: " + s);
}

std::string to_string(TieMode m) {
    switch (m) {
        case TieMode::Strict: return "strict";
        case TieMode::EqualUpper: return "equal-upper";
        case TieMode::Overlap: return "overlap";
    }
    return "?";
}

std::vector<PotentialSeparator> potential_min_seps(const CandidatePag& c, Evidence& ev, int r,
                                                   const DcfciConfig& cfg, std::vector<std::string>* warnings) {
    const MixedGraph& g = c.graph;
    std::vector<PotentialSeparator> out;
    for (int x = 0; x < g.size(); ++x)
        for (int y = x + 1; y < g.size(); ++y) {
            if (!g.adjacent(x, y)) continue;
            Mask region = cfg.region == PlausibleRegion::PossibleDSep
                              ? possible_d_sep(g, x) | possible_d_sep(g, y)
                              : g.neighbors(x) | g.neighbors(y);
            VarSet pool = from_mask(region & ~(bit(x) | bit(y)));
            for_each_subset(pool, r, [&](const VarSet& s) {
                CITestKey key{x, y, s};
                try {
                    bool plausible = ev.test(key).p_value > cfg.alpha || ev.posterior(key).p_h0 > 0.5;
                    if (plausible) out.push_back({x, y, s});
                } catch (const std::exception& e) {
                    if (warnings)
                        warnings->push_back("skipped " + format_key(g.names(), key) + ": " + e.what());
                }
                return false;
            });
        }
    return out;
}

namespace {

// Every recorded separator must m-separate its pair in the member MAG, and
// no proper subset may (single removal suffices for minimality).
bool captures_exactly(const MixedGraph& mag, const SepSetMap& sepmap) {
    for (const auto& [pair, sets] : sepmap.entries())
        for (const auto& s : sets) {
            Mask m = to_mask(s);
            if (!m_separated_mag(mag, pair.first, pair.second, m)) return false;
            for (int v : s)
                if (m_separated_mag(mag, pair.first, pair.second, m & ~bit(v))) return false;
        }
    return true;
}

std::optional<CandidatePag> build(const CandidatePag& c, const std::vector<const PotentialSeparator*>& chosen,
                                  int r) {
    if (chosen.empty()) {
        CandidatePag same = c;
        same.r = r;
        return same;
    }
    MixedGraph skeleton = c.graph;
    SepSetMap sepmap = c.sepmap;
    for (const auto* s : chosen) {
        skeleton.remove_edge(s->x, s->y);
        sepmap.add(s->x, s->y, s->s);
    }
    MixedGraph g;
    try {
        g = orient(skeleton, sepmap, ConflictPolicy::Throw);
    } catch (const OrientationConflict&) {
        return std::nullopt;
    } catch (const GraphError&) {
        return std::nullopt;
    }
    auto check = check_pag(g);
    if (!check.valid || !captures_exactly(*check.member_mag, sepmap)) return std::nullopt;
    return CandidatePag{std::move(g), std::move(sepmap), {}, 0, r};
}

}  // namespace

Expansion expand_candidates(const CandidatePag& c, const std::vector<PotentialSeparator>& seps, int r,
                            Evidence& ev, const DcfciConfig& cfg) {
    // certain items are applied to every subset once the list is too long
    std::vector<const PotentialSeparator*> fixed, free;
    if (static_cast<int>(seps.size()) <= cfg.n_r_cap) {
        for (const auto& s : seps) free.push_back(&s);
    } else {
        std::vector<std::pair<double, int>> uncertain;
        for (int i = 0; i < static_cast<int>(seps.size()); ++i) {
            double h0 = ev.posterior(CITestKey{seps[i].x, seps[i].y, seps[i].s}).p_h0;
            if (h0 >= cfg.certainty_threshold)
                fixed.push_back(&seps[i]);
            else
                uncertain.emplace_back(-h0, i);
        }
        std::stable_sort(uncertain.begin(), uncertain.end());
        if (static_cast<int>(uncertain.size()) > cfg.n_r_cap) uncertain.resize(cfg.n_r_cap);
        std::vector<int> keep;
        for (auto& [neg, i] : uncertain) keep.push_back(i);
        std::sort(keep.begin(), keep.end());
        for (int i : keep) free.push_back(&seps[i]);
    }
    Expansion out;
    const std::uint32_t subsets = std::uint32_t{1} << free.size();
    for (std::uint32_t m = 0; m < subsets; ++m) {
        std::vector<const PotentialSeparator*> chosen = fixed;
        for (std::size_t i = 0; i < free.size(); ++i)
            if (m & (std::uint32_t{1} << i)) chosen.push_back(free[i]);
        if (auto cand = build(c, chosen, r))
            out.candidates.push_back(std::move(*cand));
        else
            ++out.dropped;
    }
    return out;
}

int retained_count(const std::vector<ScoreBounds>& ranked, int k, TieMode mode) {
    const int n = static_cast<int>(ranked.size());
    if (n <= k) return n;
    int keep = k;
    const ScoreBounds& kth = ranked[k - 1];
    while (keep < n) {
        const ScoreBounds& s = ranked[keep];
        bool tie = mode == TieMode::EqualUpper ? s.upper == kth.upper
                   : mode == TieMode::Overlap  ? s.upper >= kth.lower
                                               : false;
        if (!tie) break;
        ++keep;
    }
    return keep;
}

DcfciResult run_dcfci(Evidence& ev, const std::vector<std::string>& names, const DcfciConfig& cfg_in) {
    const int p = static_cast<int>(names.size());
    DcfciConfig cfg = cfg_in;
    if (cfg.r_max < 0) cfg.r_max = p - 2;
    validate(cfg, p);
    if (ev.variables() != p) throw std::invalid_argument("evidence and variable names disagree");

    DcfciResult res;
    std::vector<CandidatePag> current{CandidatePag{MixedGraph::complete(names), {}, {}, 0, 0}};
    for (int r = 0; r <= cfg.r_max; ++r) {
        const int n = static_cast<int>(current.size());
        std::vector<std::vector<PotentialSeparator>> pots(n);
        std::vector<std::vector<std::string>> warns(n);
        std::vector<Expansion> expanded(n);
        parallel_for(n, cfg.exec, [&](int i) {
            pots[i] = potential_min_seps(current[i], ev, r, cfg, &warns[i]);
            expanded[i] = expand_candidates(current[i], pots[i], r, ev, cfg);
        });

        IterationTrace tr;
        tr.r = r;
        std::vector<CandidatePag> pool;
        std::map<std::string, bool> seen;
        auto offer = [&](CandidatePag c) {
            if (seen.emplace(serialize(c.graph), true).second) pool.push_back(std::move(c));
        };
        // carried candidates first, then new ones
        for (int i = 0; i < n; ++i) {
            for (auto& w : warns[i]) res.warnings.push_back(std::move(w));
            tr.potential += static_cast<int>(pots[i].size());
            tr.dropped += expanded[i].dropped;
            if (expanded[i].candidates.empty()) {
                // nothing survived: keep the candidate as it was
                CandidatePag same = current[i];
                same.r = r;
                offer(std::move(same));
            }
        }
        std::vector<CandidatePag> fresh;
        for (int i = 0; i < n; ++i)
            for (auto& c : expanded[i].candidates) {
                if (c.sepmap == current[i].sepmap)
                    offer(std::move(c));
                else
                    fresh.push_back(std::move(c));
            }
        for (auto& c : fresh) offer(std::move(c));

        std::vector<MixedGraph> graphs;
        for (const auto& c : pool) graphs.push_back(c.graph);
        auto scores = comparable_scores(graphs, r, ev, cfg.exec);
        std::vector<ScoreBounds> bounds;
        std::vector<std::string> keys;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            pool[i].score = scores[i].bounds;
            pool[i].difference_size = scores[i].difference_size;
            bounds.push_back(scores[i].bounds);
            keys.push_back(serialize(pool[i].graph));
        }
        auto order = rank_candidates(bounds, keys);
        std::vector<ScoreBounds> ranked;
        for (int i : order) ranked.push_back(bounds[i]);
        int keep = retained_count(ranked, cfg.k, cfg.ties);

        tr.pool = static_cast<int>(pool.size());
        for (int i : order)
            tr.ranked.push_back({hash_hex(graph_hash(pool[i].graph)), pool[i].score, pool[i].difference_size});
        tr.retained = keep;
        res.trace.push_back(std::move(tr));

        std::vector<CandidatePag> next;
        for (int j = 0; j < keep; ++j) next.push_back(std::move(pool[order[j]]));
        current = std::move(next);
    }
    res.candidates = std::move(current);
    return res;
}

bool weak_faithfulness_holds(const MixedGraph& truth_mag, Evidence& ev, int r_max) {
    const int p = truth_mag.size();
    if (r_max < 0) r_max = p - 2;
    MSeparation truth(truth_mag);
    IndependenceOracle indep = [&](int x, int y, const VarSet& z) { return truth.separated(x, y, z); };
    for (int r = 0; r <= r_max; ++r) {
        MixedGraph rpag = fci(indep, truth_mag.names(), r, ConflictPolicy::Keep);
        // structure from the r-PAG, separation facts from the truth
        auto sep = MSeparation::for_valid_pag(rpag, truth_mag);
        auto minseps = minimal_separator_map(sep, r);
        auto h = skeleton_hypotheses(sep, minseps, r);
        h.merge(collider_hypotheses(rpag, minseps));
        for (const auto& [key, kind] : h)
            if (hypothesis_probability(ev, key, kind) < 0.5) return false;
    }
    return true;
}

}  // namespace dcfci
