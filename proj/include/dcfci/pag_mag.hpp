#pragma once

#include <optional>
#include <string>

#include "dcfci/graph.hpp"

namespace dcfci {

// One MAG of the class represented by `pag`. o-> edges become -->, the o-o
// component is oriented along a maximum cardinality search ordering.
// `priority` (a permutation of vertices) breaks search ties; empty means
// index order. Throws GraphError when no valid member MAG can be built.
MixedGraph pag_to_mag(const MixedGraph& pag, const std::vector<int>& priority = {});

MixedGraph mag_to_pag(const MixedGraph& mag);

struct PagCheck {
    bool valid = false;
    std::string failed_stage;
    std::optional<MixedGraph> member_mag;
};

PagCheck check_pag(const MixedGraph& pag);
bool is_valid_pag(const MixedGraph& pag);

}  // namespace dcfci
