#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dcfci {

enum class Mark : std::uint8_t { Circle = 1, Tail = 2, Arrowhead = 3 };

enum class GraphClass { Admg, Mag, Pag };

// Sorted ascending vertex indices.
using VarSet = std::vector<int>;
using Mask = std::uint64_t;

inline constexpr int kMaxVertices = 64;

inline Mask bit(int v) { return Mask{1} << v; }
Mask to_mask(const VarSet& s);
VarSet from_mask(Mask m);

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SeparationQuery {
    int x = 0;
    int y = 0;
    VarSet z;
};

// Edge marks are stored per ordered pair: marks_[a*p+b] is the mark at b on
// the edge a-b (0 when absent). Both directions are always written together.
class MixedGraph {
public:
    MixedGraph() = default;
    explicit MixedGraph(int p);
    explicit MixedGraph(std::vector<std::string> names);

    static MixedGraph complete(std::vector<std::string> names);

    int size() const { return p_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int v) const { return names_[v]; }
    int index_of(std::string_view name) const;

    bool adjacent(int a, int b) const { return marks_[a * p_ + b] != 0; }
    Mark mark(int from, int at) const;
    Mask neighbors(int v) const { return adj_[v]; }
    std::vector<int> neighbor_list(int v) const;
    int edge_count() const;

    void set_edge(int a, int b, Mark at_a, Mark at_b);
    void set_mark(int from, int at, Mark m);
    void remove_edge(int a, int b);
    void reset_marks(Mark m);

    bool directed(int a, int b) const;    // a --> b
    bool bidirected(int a, int b) const;  // a <-> b
    bool has_circles() const;

    Mask parents(int v) const;
    Mask children(int v) const;

    bool operator==(const MixedGraph& o) const {
        return p_ == o.p_ && marks_ == o.marks_ && names_ == o.names_;
    }

private:
    void check_vertex(int v) const;

    int p_ = 0;
    std::vector<std::string> names_;
    std::vector<std::uint8_t> marks_;
    std::vector<Mask> adj_;
};

bool conforms(const MixedGraph& g, GraphClass cls);

std::string serialize(const MixedGraph& g);
MixedGraph parse_graph(std::string_view text);
std::uint64_t graph_hash(const MixedGraph& g);
std::string hash_hex(std::uint64_t h);

std::string format_set(const MixedGraph& g, const VarSet& s);

// Recorded separating sets per unordered pair (x < y).
class SepSetMap {
public:
    using Pair = std::pair<int, int>;

    void add(int x, int y, VarSet s);
    bool has(int x, int y) const;
    const std::vector<VarSet>& get(int x, int y) const;
    bool in_any(int x, int y, int v) const;
    const std::map<Pair, std::vector<VarSet>>& entries() const { return map_; }
    bool empty() const { return map_.empty(); }
    bool operator==(const SepSetMap&) const = default;

private:
    std::map<Pair, std::vector<VarSet>> map_;
};

inline std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

// Calls fn(subset) for every size-k subset of `pool` in lexicographic order.
// fn returns true to stop early; the function returns whether it stopped.
template <class Fn>
bool for_each_subset(const VarSet& pool, int k, Fn&& fn) {
    const int n = static_cast<int>(pool.size());
    if (k < 0 || k > n) return false;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    VarSet cur(k);
    while (true) {
        for (int i = 0; i < k; ++i) cur[i] = pool[idx[i]];
        if (fn(static_cast<const VarSet&>(cur))) return true;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace dcfci
