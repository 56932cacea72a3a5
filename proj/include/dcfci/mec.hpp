#pragma once

#include <compare>
#include <vector>

#include "dcfci/graph.hpp"
#include "dcfci/separation.hpp"

namespace dcfci {

// <a, b, c> with middle vertex b; stored with a < c.
struct Triple {
    int a = 0, b = 0, c = 0;
    auto operator<=>(const Triple&) const = default;
};

inline Triple make_triple(int a, int b, int c) { return a < c ? Triple{a, b, c} : Triple{c, b, a}; }

enum class TripleKind { Collider, NonCollider };

struct TripleWithOrder {
    Triple triple;
    int order = 0;
    TripleKind kind = TripleKind::Collider;
    auto operator<=>(const TripleWithOrder&) const = default;
};

// All minimal separators of size <= max_size (x, y non-adjacent), sorted.
std::vector<VarSet> minimal_separators(const MSeparation& sep, int x, int y, int max_size);
std::vector<VarSet> minimal_separators(const MixedGraph& g, int x, int y, int max_size);

// Minimal separators of size <= r for every non-adjacent pair.
SepSetMap minimal_separator_map(const MSeparation& sep, int r);

std::vector<TripleWithOrder> triples_with_order(const MixedGraph& g);

// Pairs (x, y), x < y, that the triple corresponds to. Throws GraphError if
// the triple has no order in g.
std::vector<std::pair<int, int>> corresponds(const MixedGraph& g, const Triple& t);

struct MecSignature {
    std::vector<std::pair<int, int>> skeleton;
    std::vector<TripleWithOrder> colliders;
    bool operator==(const MecSignature&) const = default;
};

MecSignature mec_signature(const MixedGraph& g);

}  // namespace dcfci
