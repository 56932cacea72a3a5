#include "dcfci/mec.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <set>

namespace dcfci {

std::vector<VarSet> minimal_separators(const MSeparation& sep, int x, int y, int max_size) {
    std::vector<VarSet> out;
    const MixedGraph& g = sep.graph();
    if (g.adjacent(x, y)) return out;
    VarSet pool = from_mask(sep.separator_pool(x, y));
    std::vector<Mask> found;
    const int top = std::min<int>(max_size, static_cast<int>(pool.size()));
    for (int k = 0; k <= top; ++k) {
        for_each_subset(pool, k, [&](const VarSet& s) {
            Mask m = to_mask(s);
            for (Mask f : found)
                if ((f & m) == f) return false;
            if (!sep.separated(x, y, m)) return false;
            for (int v : s)
                if (sep.separated(x, y, m & ~bit(v))) return false;
            found.push_back(m);
            out.push_back(s);
            return false;
        });
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VarSet> minimal_separators(const MixedGraph& g, int x, int y, int max_size) {
    return minimal_separators(MSeparation(g), x, y, max_size);
}

SepSetMap minimal_separator_map(const MSeparation& sep, int r) {
    SepSetMap out;
    const MixedGraph& g = sep.graph();
    for (int x = 0; x < g.size(); ++x)
        for (int y = x + 1; y < g.size(); ++y) {
            if (g.adjacent(x, y)) continue;
            for (auto& s : minimal_separators(sep, x, y, r)) out.add(x, y, s);
        }
    return out;
}

namespace {

std::optional<TripleKind> kind_at(const MixedGraph& g, int a, int b, int c) {
    Mark ma = g.mark(a, b), mc = g.mark(c, b);
    if (ma == Mark::Arrowhead && mc == Mark::Arrowhead) return TripleKind::Collider;
    if (ma == Mark::Tail || mc == Mark::Tail) return TripleKind::NonCollider;
    if (ma == Mark::Circle && mc == Mark::Circle && !g.adjacent(a, c)) return TripleKind::NonCollider;
    return std::nullopt;
}

}  // namespace

std::vector<TripleWithOrder> triples_with_order(const MixedGraph& g) {
    const int p = g.size();
    std::map<Triple, TripleWithOrder> known;
    std::vector<Triple> shielded;
    for (int b = 0; b < p; ++b) {
        auto nb = g.neighbor_list(b);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                int a = nb[i], c = nb[j];
                auto k = kind_at(g, a, b, c);
                if (!k) continue;
                Triple t{a, b, c};
                if (!g.adjacent(a, c))
                    known[t] = {t, 0, *k};
                else
                    shielded.push_back(t);
            }
    }
    auto has = [&](int q, int mid, int end, TripleKind kind, int below) {
        auto it = known.find(make_triple(q, mid, end));
        return it != known.end() && it->second.kind == kind && it->second.order < below;
    };
    // ⟨a,b,c⟩ gets order i if some q has ⟨q,a,b⟩ a collider and ⟨q,a,c⟩ a
    // non-collider, both of order below i (either end may play the role of a)
    auto licensed = [&](int a, int b, int c, int below) {
        for (Mask m = g.neighbors(a); m; m &= m - 1) {
            int q = std::countr_zero(m);
            if (q == b || q == c) continue;
            if (has(q, a, b, TripleKind::Collider, below) && has(q, a, c, TripleKind::NonCollider, below)) return true;
        }
        return false;
    };
    for (int order = 1; !shielded.empty(); ++order) {
        std::vector<Triple> added, rest;
        for (const Triple& t : shielded) {
            if (licensed(t.a, t.b, t.c, order) || licensed(t.c, t.b, t.a, order))
                added.push_back(t);
            else
                rest.push_back(t);
        }
        if (added.empty()) break;
        for (const Triple& t : added) known[t] = {t, order, *kind_at(g, t.a, t.b, t.c)};
        shielded = std::move(rest);
    }
    std::vector<TripleWithOrder> out;
    for (auto& [t, w] : known) out.push_back(w);
    return out;
}

namespace {

// Endpoints u of discriminating paths <u, ..., a, b, c> for b.
void discriminating_endpoints(const MixedGraph& g, int v, int c, Mask on_path, std::set<int>& out) {
    for (Mask m = g.neighbors(v) & ~on_path; m; m &= m - 1) {
        int u = std::countr_zero(m);
        if (u == c || g.mark(u, v) != Mark::Arrowhead) continue;
        if (!g.adjacent(u, c)) {
            out.insert(u);
        } else if (g.directed(u, c) && g.mark(v, u) == Mark::Arrowhead) {
            discriminating_endpoints(g, u, c, on_path | bit(u), out);
        }
    }
}

}  // namespace

std::vector<std::pair<int, int>> corresponds(const MixedGraph& g, const Triple& t) {
    auto all = triples_with_order(g);
    Triple key = make_triple(t.a, t.b, t.c);
    if (std::none_of(all.begin(), all.end(), [&](const TripleWithOrder& w) { return w.triple == key; }))
        throw GraphError("corresponds: not a triple with order");
    std::set<std::pair<int, int>> pairs;
    if (!g.adjacent(key.a, key.c)) {
        pairs.insert({key.a, key.c});
    } else {
        for (auto [a, c] : {std::pair{key.a, key.c}, std::pair{key.c, key.a}}) {
            if (g.mark(key.b, a) != Mark::Arrowhead || !g.directed(a, c)) continue;
            std::set<int> ends;
            discriminating_endpoints(g, a, c, bit(a) | bit(key.b) | bit(c), ends);
            for (int u : ends) pairs.insert(ordered(u, c));
        }
    }
    return {pairs.begin(), pairs.end()};
}

MecSignature mec_signature(const MixedGraph& g) {
    MecSignature s;
    for (int a = 0; a < g.size(); ++a)
        for (int b = a + 1; b < g.size(); ++b)
            if (g.adjacent(a, b)) s.skeleton.emplace_back(a, b);
    for (auto& t : triples_with_order(g))
        if (t.kind == TripleKind::Collider) s.colliders.push_back(t);
    return s;
}

}  // namespace dcfci
