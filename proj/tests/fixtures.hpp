#pragma once

#include "dcfci/graph.hpp"

namespace fixture {

inline dcfci::MixedGraph g(const char* edges) {
    return dcfci::parse_graph(std::string("# vars: A,B,X,Y\n") + edges);
}

inline dcfci::MixedGraph true_mag() { return g("X --> A\nA --> Y\nB --> Y\nA <-> B\n"); }
inline dcfci::MixedGraph true_pag() { return g("X o-> A\nB o-> A\nA --> Y\nB --> Y\n"); }
inline dcfci::MixedGraph fci_pag() { return g("X o-> A\nA <-> B\nY o-> B\n"); }
inline dcfci::MixedGraph cfci_pag() { return g("X o-o A\nY o-> B\nA o-> B\n"); }
inline dcfci::MixedGraph bccd_pag() { return g("A o-> Y\nB o-o Y\nB o-o A\nX o-o A\n"); }
inline dcfci::MixedGraph bccd_adjusted() { return g("A o-o Y\nB o-o Y\nB o-o A\nX o-o A\n"); }
inline dcfci::MixedGraph dcd_pag() { return g("X o-> B\nY o-> B\nA o-> B\nX o-o A\n"); }

}  // namespace fixture
