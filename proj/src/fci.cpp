#include "dcfci/fci.hpp"

#include <algorithm>
#include <bit>
#include <deque>

#include "dcfci/separation.hpp"

namespace dcfci {

namespace {

class Orienter {
public:
    Orienter(MixedGraph& g, const SepSetMap& s, ConflictPolicy policy) : g_(g), s_(s), policy_(policy) {}

    bool rule0();
    bool rule1();
    bool rule2();
    bool rule3();
    bool rule4();
    bool rule8();
    bool rule9();
    bool rule10();

private:
    // Sets the mark at `at` on edge from-at. Only circles are overwritten.
    bool put(int from, int at, Mark m) {
        Mark cur = g_.mark(from, at);
        if (cur == m) return false;
        if (cur == Mark::Circle) {
            g_.set_mark(from, at, m);
            return true;
        }
        if (policy_ == ConflictPolicy::Throw)
            throw OrientationConflict("conflicting orientation at " + g_.name(at) + " on edge " + g_.name(from) + "-" +
                                          g_.name(at),
                                      from, at);
        return false;
    }

    bool sep_contains(int a, int c, int b) const {
        if (!s_.has(a, c))
            throw GraphError("no separating set recorded for " + g_.name(a) + "," + g_.name(c));
        return s_.in_any(a, c, b);
    }

    // a to b possibly directed: no arrowhead at a, no tail at b
    bool pd(int a, int b) const { return g_.mark(b, a) != Mark::Arrowhead && g_.mark(a, b) != Mark::Tail; }

    int discriminating_endpoint(int a, int b, int c) const;
    bool uncovered_pd_path(int prev, int cur, int target, Mask visited) const;
    Mask first_steps(int a, int target) const;

    MixedGraph& g_;
    const SepSetMap& s_;
    ConflictPolicy policy_;
};

bool Orienter::rule0() {
    bool changed = false;
    const int p = g_.size();
    for (int b = 0; b < p; ++b) {
        auto nb = g_.neighbor_list(b);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                int a = nb[i], c = nb[j];
                if (g_.adjacent(a, c) || sep_contains(a, c, b)) continue;
                changed |= put(a, b, Mark::Arrowhead);
                changed |= put(c, b, Mark::Arrowhead);
            }
    }
    return changed;
}

bool Orienter::rule1() {
    bool changed = false;
    const int p = g_.size();
    for (int b = 0; b < p; ++b)
        for (int a : g_.neighbor_list(b)) {
            if (g_.mark(a, b) != Mark::Arrowhead) continue;
            for (int c : g_.neighbor_list(b)) {
                if (c == a || g_.adjacent(a, c) || g_.mark(c, b) != Mark::Circle) continue;
                changed |= put(c, b, Mark::Tail);
                changed |= put(b, c, Mark::Arrowhead);
            }
        }
    return changed;
}

bool Orienter::rule2() {
    bool changed = false;
    const int p = g_.size();
    for (int a = 0; a < p; ++a)
        for (int c : g_.neighbor_list(a)) {
            if (g_.mark(a, c) != Mark::Circle) continue;
            for (Mask m = g_.neighbors(a) & g_.neighbors(c); m; m &= m - 1) {
                int b = std::countr_zero(m);
                bool chain1 = g_.directed(a, b) && g_.mark(b, c) == Mark::Arrowhead;
                bool chain2 = g_.mark(a, b) == Mark::Arrowhead && g_.directed(b, c);
                if (chain1 || chain2) {
                    changed |= put(a, c, Mark::Arrowhead);
                    break;
                }
            }
        }
    return changed;
}

bool Orienter::rule3() {
    bool changed = false;
    const int p = g_.size();
    for (int b = 0; b < p; ++b) {
        auto nb = g_.neighbor_list(b);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                int a = nb[i], c = nb[j];
                if (g_.adjacent(a, c)) continue;
                if (g_.mark(a, b) != Mark::Arrowhead || g_.mark(c, b) != Mark::Arrowhead) continue;
                for (Mask m = g_.neighbors(a) & g_.neighbors(c) & g_.neighbors(b); m; m &= m - 1) {
                    int d = std::countr_zero(m);
                    if (g_.mark(a, d) == Mark::Circle && g_.mark(c, d) == Mark::Circle &&
                        g_.mark(d, b) == Mark::Circle)
                        changed |= put(d, b, Mark::Arrowhead);
                }
            }
    }
    return changed;
}

// Shortest discriminating path <u, ..., a, b, c> for b; returns u or -1.
int Orienter::discriminating_endpoint(int a, int b, int c) const {
    const int p = g_.size();
    std::vector<int> seen(p, 0);
    std::deque<int> queue{a};
    seen[a] = seen[b] = seen[c] = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : g_.neighbor_list(v)) {
            if (seen[u] || g_.mark(u, v) != Mark::Arrowhead) continue;
            if (!g_.adjacent(u, c)) return u;
            if (g_.directed(u, c) && g_.mark(v, u) == Mark::Arrowhead) {
                seen[u] = 1;
                queue.push_back(u);
            }
        }
    }
    return -1;
}

bool Orienter::rule4() {
    bool changed = false;
    const int p = g_.size();
    for (int b = 0; b < p; ++b)
        for (int c : g_.neighbor_list(b)) {
            if (g_.mark(c, b) != Mark::Circle) continue;
            for (int a : g_.neighbor_list(b)) {
                if (a == c || g_.mark(b, a) != Mark::Arrowhead || !g_.directed(a, c)) continue;
                int u = discriminating_endpoint(a, b, c);
                if (u < 0) continue;
                if (sep_contains(u, c, b)) {
                    changed |= put(c, b, Mark::Tail);
                    changed |= put(b, c, Mark::Arrowhead);
                } else {
                    changed |= put(a, b, Mark::Arrowhead);
                    changed |= put(c, b, Mark::Arrowhead);
                    changed |= put(b, c, Mark::Arrowhead);
                }
                if (g_.mark(c, b) != Mark::Circle) break;
            }
        }
    return changed;
}

bool Orienter::rule8() {
    bool changed = false;
    const int p = g_.size();
    for (int a = 0; a < p; ++a)
        for (int c : g_.neighbor_list(a)) {
            if (g_.mark(c, a) != Mark::Circle || g_.mark(a, c) != Mark::Arrowhead) continue;
            for (Mask m = g_.neighbors(a) & g_.neighbors(c); m; m &= m - 1) {
                int b = std::countr_zero(m);
                bool first = g_.directed(a, b) || (g_.mark(b, a) == Mark::Tail && g_.mark(a, b) == Mark::Circle);
                if (first && g_.directed(b, c)) {
                    changed |= put(c, a, Mark::Tail);
                    break;
                }
            }
        }
    return changed;
}

bool Orienter::uncovered_pd_path(int prev, int cur, int target, Mask visited) const {
    for (Mask m = g_.neighbors(cur) & ~visited; m; m &= m - 1) {
        int next = std::countr_zero(m);
        if (g_.adjacent(prev, next) || !pd(cur, next)) continue;
        if (next == target) return true;
        if (uncovered_pd_path(cur, next, target, visited | bit(next))) return true;
    }
    return false;
}

bool Orienter::rule9() {
    bool changed = false;
    const int p = g_.size();
    for (int a = 0; a < p; ++a)
        for (int c : g_.neighbor_list(a)) {
            if (g_.mark(c, a) != Mark::Circle || g_.mark(a, c) != Mark::Arrowhead) continue;
            for (int b : g_.neighbor_list(a)) {
                if (b == c || g_.adjacent(b, c) || !pd(a, b)) continue;
                if (uncovered_pd_path(a, b, c, bit(a) | bit(b))) {
                    changed |= put(c, a, Mark::Tail);
                    break;
                }
            }
        }
    return changed;
}

// Neighbours mu of a that start an uncovered p.d. path <a, mu, ..., target>.
Mask Orienter::first_steps(int a, int target) const {
    Mask out = 0;
    for (int mu : g_.neighbor_list(a)) {
        if (!pd(a, mu)) continue;
        if (mu == target || uncovered_pd_path(a, mu, target, bit(a) | bit(mu))) out |= bit(mu);
    }
    return out;
}

bool Orienter::rule10() {
    bool changed = false;
    const int p = g_.size();
    for (int a = 0; a < p; ++a)
        for (int c : g_.neighbor_list(a)) {
            if (g_.mark(c, a) != Mark::Circle || g_.mark(a, c) != Mark::Arrowhead) continue;
            std::vector<int> pa;
            for (int v : g_.neighbor_list(c))
                if (v != a && g_.directed(v, c)) pa.push_back(v);
            bool done = false;
            for (std::size_t i = 0; i < pa.size() && !done; ++i)
                for (std::size_t j = i + 1; j < pa.size() && !done; ++j) {
                    Mask mb = first_steps(a, pa[i]);
                    if (!mb) break;
                    Mask mt = first_steps(a, pa[j]);
                    for (Mask x = mb; x && !done; x &= x - 1)
                        for (Mask y = mt; y && !done; y &= y - 1) {
                            int mu = std::countr_zero(x), om = std::countr_zero(y);
                            if (mu != om && !g_.adjacent(mu, om)) done = true;
                        }
                }
            if (done) changed |= put(c, a, Mark::Tail);
        }
    return changed;
}

}  // namespace

MixedGraph orient_colliders(const MixedGraph& skeleton, const SepSetMap& sepsets) {
    MixedGraph g = skeleton;
    g.reset_marks(Mark::Circle);
    Orienter(g, sepsets, ConflictPolicy::Keep).rule0();
    return g;
}

MixedGraph orient(const MixedGraph& skeleton, const SepSetMap& sepsets, ConflictPolicy policy) {
    MixedGraph g = skeleton;
    g.reset_marks(Mark::Circle);
    Orienter o(g, sepsets, policy);
    o.rule0();
    bool any = true;
    while (any) {
        any = false;
        bool inner = true;
        while (inner) {
            inner = false;
            inner |= o.rule1();
            inner |= o.rule2();
            inner |= o.rule3();
            inner |= o.rule4();
            any |= inner;
        }
        any |= o.rule8();
        any |= o.rule9();
        any |= o.rule10();
    }
    return g;
}

SkeletonResult fci_skeleton(const IndependenceOracle& indep, const std::vector<std::string>& names, int r_max,
                            bool pdsep_stage) {
    MixedGraph g = MixedGraph::complete(names);
    SepSetMap sep;
    const int p = g.size();
    if (r_max < 0) r_max = std::max(0, p - 2);

    for (int r = 0; r <= r_max; ++r) {
        std::vector<Mask> adj(p);
        bool any_large = false;
        for (int v = 0; v < p; ++v) {
            adj[v] = g.neighbors(v);
            if (std::popcount(adj[v]) - 1 >= r) any_large = true;
        }
        if (!any_large) break;
        for (int x = 0; x < p; ++x)
            for (int y = x + 1; y < p; ++y) {
                if (!g.adjacent(x, y)) continue;
                for (int side : {x, y}) {
                    int other = side == x ? y : x;
                    VarSet pool = from_mask(adj[side] & ~bit(other));
                    bool removed = for_each_subset(pool, r, [&](const VarSet& s) {
                        if (!indep(x, y, s)) return false;
                        g.remove_edge(x, y);
                        sep.add(x, y, s);
                        return true;
                    });
                    if (removed) break;
                }
            }
    }

    if (pdsep_stage) {
        MixedGraph oriented = orient_colliders(g, sep);
        std::vector<Mask> pds(p);
        for (int v = 0; v < p; ++v) pds[v] = possible_d_sep(oriented, v);
        for (int x = 0; x < p; ++x)
            for (int y = x + 1; y < p; ++y) {
                if (!g.adjacent(x, y)) continue;
                bool removed = false;
                for (int side : {x, y}) {
                    int other = side == x ? y : x;
                    VarSet pool = from_mask(pds[side] & ~bit(other) & ~bit(side));
                    // adjacency subsets were already tested in the first stage
                    Mask adj_side = g.neighbors(side);
                    for (int r = 0; r <= std::min<int>(r_max, static_cast<int>(pool.size())) && !removed; ++r) {
                        removed = for_each_subset(pool, r, [&](const VarSet& s) {
                            if ((to_mask(s) & ~adj_side) == 0) return false;
                            if (!indep(x, y, s)) return false;
                            g.remove_edge(x, y);
                            sep.add(x, y, s);
                            return true;
                        });
                    }
                    if (removed) break;
                }
            }
    }
    return {g, sep};
}

MixedGraph fci(const IndependenceOracle& indep, const std::vector<std::string>& names, int r_max,
               ConflictPolicy policy) {
    auto sk = fci_skeleton(indep, names, r_max);
    return orient(sk.graph, sk.sepsets, policy);
}

}  // namespace dcfci
