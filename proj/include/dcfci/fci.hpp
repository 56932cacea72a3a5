#pragma once

#include <functional>
#include <stdexcept>

#include "dcfci/graph.hpp"

namespace dcfci {

// Returns true when x and y are judged independent given z.
using IndependenceOracle = std::function<bool(int x, int y, const VarSet& z)>;

enum class ConflictPolicy { Throw, Keep };

class OrientationConflict : public std::runtime_error {
public:
    OrientationConflict(const std::string& what, int a, int b) : std::runtime_error(what), a(a), b(b) {}
    int a, b;
};

struct SkeletonResult {
    MixedGraph graph;
    SepSetMap sepsets;
};

// Adjacency search (order-independent per level) followed by the
// Possible-D-SEP stage. Conditioning sets never exceed r_max.
SkeletonResult fci_skeleton(const IndependenceOracle& indep, const std::vector<std::string>& names, int r_max,
                            bool pdsep_stage = true);

// Resets every mark to a circle, then applies R0, R1-R4 and R8-R10 to a
// fixed point.
MixedGraph orient(const MixedGraph& skeleton, const SepSetMap& sepsets, ConflictPolicy policy = ConflictPolicy::Throw);

// Only R0 (unshielded colliders); used before the Possible-D-SEP stage.
MixedGraph orient_colliders(const MixedGraph& skeleton, const SepSetMap& sepsets);

MixedGraph fci(const IndependenceOracle& indep, const std::vector<std::string>& names, int r_max,
               ConflictPolicy policy = ConflictPolicy::Keep);

}  // namespace dcfci
