#include "dcfci/separation.hpp"

#include <bit>
#include <vector>

namespace dcfci {

Mask ancestors(const MixedGraph& g, Mask of) {
    Mask seen = of, frontier = of;
    while (frontier) {
        int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        Mask pa = g.parents(v) & ~seen;
        seen |= pa;
        frontier |= pa;
    }
    return seen;
}

Mask possible_ancestors(const MixedGraph& g, Mask of) {
    Mask seen = of, frontier = of;
    while (frontier) {
        int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        for (Mask m = g.neighbors(v) & ~seen; m; m &= m - 1) {
            int u = std::countr_zero(m);
            if (g.mark(v, u) != Mark::Arrowhead && g.mark(u, v) != Mark::Tail) {
                seen |= bit(u);
                frontier |= bit(u);
            }
        }
    }
    return seen;
}

void check_query(const MixedGraph& g, const SeparationQuery& q) {
    const int p = g.size();
    if (q.x < 0 || q.x >= p || q.y < 0 || q.y >= p) throw GraphError("query variable out of range");
    if (q.x == q.y) throw GraphError("query endpoints must differ");
    for (int v : q.z) {
        if (v < 0 || v >= p) throw GraphError("conditioning variable out of range");
        if (v == q.x || v == q.y) throw GraphError("conditioning set contains an endpoint");
    }
}

bool m_separated_mag(const MixedGraph& g, int x, int y, Mask z) {
    const int p = g.size();
    const Mask anz = ancestors(g, z);
    // visited[v][arrow-in]
    std::vector<std::uint8_t> visited(2 * p, 0);
    std::vector<std::pair<int, int>> stack;
    for (Mask m = g.neighbors(x); m; m &= m - 1) {
        int w = std::countr_zero(m);
        if (w == y) return false;
        int ah = g.mark(x, w) == Mark::Arrowhead;
        if (!visited[2 * w + ah]) {
            visited[2 * w + ah] = 1;
            stack.emplace_back(w, ah);
        }
    }
    while (!stack.empty()) {
        auto [v, ah_in] = stack.back();
        stack.pop_back();
        for (Mask m = g.neighbors(v); m; m &= m - 1) {
            int u = std::countr_zero(m);
            if (u == x) continue;
            bool collider = ah_in && g.mark(u, v) == Mark::Arrowhead;
            bool pass = collider ? (anz & bit(v)) != 0 : (z & bit(v)) == 0;
            if (!pass) continue;
            if (u == y) return false;
            int ah = g.mark(v, u) == Mark::Arrowhead;
            if (!visited[2 * u + ah]) {
                visited[2 * u + ah] = 1;
                stack.emplace_back(u, ah);
            }
        }
    }
    return true;
}

bool m_separated_mag(const MixedGraph& g, const SeparationQuery& q) {
    check_query(g, q);
    return m_separated_mag(g, q.x, q.y, to_mask(q.z));
}

namespace {

struct PathSearch {
    const MixedGraph& g;
    int y;
    Mask z;
    Mask anz;

    // Extends a path ending prev-cur. `on_path` holds every vertex already used.
    bool connects(int prev, int cur, Mask on_path) const {
        for (Mask m = g.neighbors(cur) & ~on_path; m; m &= m - 1) {
            int next = std::countr_zero(m);
            Mark a = g.mark(prev, cur), c = g.mark(next, cur);
            bool pass;
            if (a == Mark::Arrowhead && c == Mark::Arrowhead) {
                pass = (anz & bit(cur)) != 0;
            } else if (a == Mark::Tail || c == Mark::Tail ||
                       (a == Mark::Circle && c == Mark::Circle && !g.adjacent(prev, next))) {
                pass = (z & bit(cur)) == 0;
            } else {
                pass = false;
            }
            if (!pass) continue;
            if (next == y) return true;
            if (connects(cur, next, on_path | bit(next))) return true;
        }
        return false;
    }
};

}  // namespace

bool m_separated_pag(const MixedGraph& g, int x, int y, Mask z) {
    if (g.adjacent(x, y)) return false;
    PathSearch s{g, y, z, ancestors(g, z)};
    for (Mask m = g.neighbors(x); m; m &= m - 1) {
        int w = std::countr_zero(m);
        if (s.connects(x, w, bit(x) | bit(w))) return false;
    }
    return true;
}

bool m_separated_pag(const MixedGraph& g, const SeparationQuery& q) {
    check_query(g, q);
    return m_separated_pag(g, q.x, q.y, to_mask(q.z));
}

bool is_ancestral(const MixedGraph& g) {
    if (g.has_circles()) throw GraphError("is_ancestral: graph has circle marks");
    const int p = g.size();
    for (int a = 0; a < p; ++a) {
        for (Mask m = g.neighbors(a); m; m &= m - 1) {
            int b = std::countr_zero(m);
            if (g.mark(b, a) == Mark::Tail && g.mark(a, b) == Mark::Tail) return false;
            if (g.mark(a, b) != Mark::Arrowhead) continue;
            // arrowhead at b: b must not be an ancestor of a
            Mask anc_a = ancestors(g, bit(a));
            if (anc_a & bit(b)) return false;
        }
    }
    return true;
}

bool is_maximal(const MixedGraph& g) {
    const int p = g.size();
    for (int a = 0; a < p; ++a) {
        for (int b = a + 1; b < p; ++b) {
            if (g.adjacent(a, b)) continue;
            const Mask anc = ancestors(g, bit(a) | bit(b));
            Mask seen = 0;
            std::vector<int> stack;
            for (Mask m = g.neighbors(a); m; m &= m - 1) {
                int w = std::countr_zero(m);
                if (g.mark(a, w) == Mark::Arrowhead && (anc & bit(w)) && !(seen & bit(w))) {
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
                    if (u == b) return false;
                    if (u == a || (seen & bit(u))) continue;
                    if (g.mark(v, u) == Mark::Arrowhead && (anc & bit(u))) {
                        seen |= bit(u);
                        stack.push_back(u);
                    }
                }
            }
        }
    }
    return true;
}

Mask possible_d_sep(const MixedGraph& g, int x) {
    const int p = g.size();
    Mask out = 0;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(p) * p, 0);
    std::vector<std::pair<int, int>> stack;
    for (Mask m = g.neighbors(x); m; m &= m - 1) {
        int w = std::countr_zero(m);
        out |= bit(w);
        seen[x * p + w] = 1;
        stack.emplace_back(x, w);
    }
    while (!stack.empty()) {
        auto [prev, cur] = stack.back();
        stack.pop_back();
        for (Mask m = g.neighbors(cur); m; m &= m - 1) {
            int next = std::countr_zero(m);
            if (next == prev || next == x) continue;
            bool collider = g.mark(prev, cur) == Mark::Arrowhead && g.mark(next, cur) == Mark::Arrowhead;
            if (!collider && !g.adjacent(prev, next)) continue;
            out |= bit(next);
            if (!seen[cur * p + next]) {
                seen[cur * p + next] = 1;
                stack.emplace_back(cur, next);
            }
        }
    }
    return out & ~bit(x);
}

MSeparation::MSeparation(const MixedGraph& g) : graph_(g), query_graph_(g), use_mag_(!g.has_circles()) {}

MSeparation MSeparation::for_valid_pag(const MixedGraph& pag, const MixedGraph& member_mag) {
    MSeparation s(pag);
    s.query_graph_ = member_mag;
    s.use_mag_ = true;
    return s;
}

bool MSeparation::separated(int x, int y, Mask z) const {
    return use_mag_ ? m_separated_mag(query_graph_, x, y, z) : m_separated_pag(graph_, x, y, z);
}

Mask MSeparation::separator_pool(int x, int y) const {
    Mask pool = use_mag_ ? ancestors(query_graph_, bit(x) | bit(y)) : possible_ancestors(graph_, bit(x) | bit(y));
    return pool & ~(bit(x) | bit(y));
}

}  // namespace dcfci
