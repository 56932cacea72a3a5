#pragma once

// Independent brute-force references used only by the tests.

#include <algorithm>
#include <bit>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dcfci/graph.hpp"

namespace oracle {

using dcfci::Mark;
using dcfci::MixedGraph;
using dcfci::Mask;

inline bool is_ancestor(const MixedGraph& g, int a, int b) {
    if (a == b) return true;
    std::vector<int> seen(g.size(), 0), stack{a};
    seen[a] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int c = 0; c < g.size(); ++c) {
            if (!g.adjacent(v, c) || seen[c]) continue;
            if (g.mark(v, c) == Mark::Arrowhead && g.mark(c, v) == Mark::Tail) {
                if (c == b) return true;
                seen[c] = 1;
                stack.push_back(c);
            }
        }
    }
    return false;
}

inline void all_paths(const MixedGraph& g, int x, int y, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> path{x};
    std::vector<int> used(g.size(), 0);
    used[x] = 1;
    std::function<void(int)> rec = [&](int v) {
        for (int u = 0; u < g.size(); ++u) {
            if (!g.adjacent(v, u) || used[u]) continue;
            path.push_back(u);
            if (u == y) {
                fn(path);
            } else {
                used[u] = 1;
                rec(u);
                used[u] = 0;
            }
            path.pop_back();
        }
    };
    rec(x);
}

// m-separation by enumerating every path (MAG, no circles).
inline bool m_separated(const MixedGraph& g, int x, int y, Mask z) {
    bool connected = false;
    all_paths(g, x, y, [&](const std::vector<int>& path) {
        if (connected) return;
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            int a = path[i - 1], b = path[i], c = path[i + 1];
            bool collider = g.mark(a, b) == Mark::Arrowhead && g.mark(c, b) == Mark::Arrowhead;
            if (collider) {
                bool anc = false;
                for (int w = 0; w < g.size(); ++w)
                    if ((z >> w & 1) && is_ancestor(g, b, w)) anc = true;
                if (!anc) return;
            } else if (z >> b & 1) {
                return;
            }
        }
        connected = true;
    });
    return !connected;
}

inline bool has_inducing_path(const MixedGraph& g, int a, int b) {
    bool found = false;
    all_paths(g, a, b, [&](const std::vector<int>& path) {
        if (found || path.size() < 3) return;
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            int u = path[i - 1], v = path[i], w = path[i + 1];
            if (g.mark(u, v) != Mark::Arrowhead || g.mark(w, v) != Mark::Arrowhead) return;
            if (!is_ancestor(g, v, a) && !is_ancestor(g, v, b)) return;
        }
        found = true;
    });
    return found;
}

inline bool ancestral(const MixedGraph& g) {
    for (int a = 0; a < g.size(); ++a)
        for (int b = 0; b < g.size(); ++b) {
            if (a == b || !g.adjacent(a, b)) continue;
            if (g.mark(a, b) == Mark::Arrowhead && is_ancestor(g, b, a)) return false;
        }
    return true;
}

inline std::vector<std::string> names(int p) {
    std::vector<std::string> n;
    for (int i = 0; i < p; ++i) n.push_back(std::string(1, static_cast<char>('A' + i)));
    return n;
}

// Random MAG by rejection: directed edges follow a random order, bidirected
// edges only between vertices with no ancestral relation.
inline MixedGraph random_mag(int p, double p_dir, double p_bi, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0, 1);
    while (true) {
        std::vector<int> order(p);
        for (int i = 0; i < p; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        MixedGraph g(names(p));
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                if (u(rng) < p_dir) g.set_edge(order[i], order[j], Mark::Tail, Mark::Arrowhead);
        for (int a = 0; a < p; ++a)
            for (int b = a + 1; b < p; ++b)
                if (!g.adjacent(a, b) && u(rng) < p_bi && !is_ancestor(g, a, b) && !is_ancestor(g, b, a))
                    g.set_edge(a, b, Mark::Arrowhead, Mark::Arrowhead);
        if (!ancestral(g)) continue;
        bool maximal = true;
        for (int a = 0; a < p && maximal; ++a)
            for (int b = a + 1; b < p && maximal; ++b)
                if (!g.adjacent(a, b) && has_inducing_path(g, a, b)) maximal = false;
        if (maximal) return g;
    }
}

}  // namespace oracle
