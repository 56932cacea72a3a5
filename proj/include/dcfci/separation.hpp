#pragma once

#include <memory>

#include "dcfci/graph.hpp"

namespace dcfci {

// Vertices with a directed path (--> edges only) into `of`, including `of`.
Mask ancestors(const MixedGraph& g, Mask of);
// Vertices with a possibly directed path into `of`: no arrowhead at the
// near end and no tail at the far end of each edge.
Mask possible_ancestors(const MixedGraph& g, Mask of);

bool m_separated_mag(const MixedGraph& g, int x, int y, Mask z);
bool m_separated_mag(const MixedGraph& g, const SeparationQuery& q);

// Definite m-connecting path search; exact on any PAG-classed graph.
bool m_separated_pag(const MixedGraph& g, int x, int y, Mask z);
bool m_separated_pag(const MixedGraph& g, const SeparationQuery& q);

void check_query(const MixedGraph& g, const SeparationQuery& q);

bool is_ancestral(const MixedGraph& g);
bool is_maximal(const MixedGraph& g);

// Possible-D-SEP(x): vertices reachable from x by a path on which every
// inner vertex is a collider or sits in a triangle with its path neighbours.
Mask possible_d_sep(const MixedGraph& g, int x);

// m-separation queries against a fixed graph. For a graph with circle
// marks that is a valid PAG, queries go to a member MAG.
class MSeparation {
public:
    explicit MSeparation(const MixedGraph& g);
    static MSeparation for_valid_pag(const MixedGraph& pag, const MixedGraph& member_mag);

    const MixedGraph& graph() const { return graph_; }
    bool separated(int x, int y, Mask z) const;
    bool separated(int x, int y, const VarSet& z) const { return separated(x, y, to_mask(z)); }
    Mask separator_pool(int x, int y) const;

private:
    MixedGraph graph_;
    MixedGraph query_graph_;
    bool use_mag_ = true;
};

}  // namespace dcfci
