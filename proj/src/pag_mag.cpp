#include "dcfci/pag_mag.hpp"

#include <bit>
#include <numeric>

#include "dcfci/fci.hpp"
#include "dcfci/separation.hpp"

namespace dcfci {

MixedGraph pag_to_mag(const MixedGraph& pag, const std::vector<int>& priority) {
    const int p = pag.size();
    if (!conforms(pag, GraphClass::Pag)) throw GraphError("pag_to_mag: graph is not PAG-classed");
    std::vector<int> rank(p);
    if (priority.empty()) {
        std::iota(rank.begin(), rank.end(), 0);
    } else {
        if (static_cast<int>(priority.size()) != p) throw GraphError("pag_to_mag: priority size mismatch");
        std::vector<int> seen(p, 0);
        for (int i = 0; i < p; ++i) {
            int v = priority[i];
            if (v < 0 || v >= p || seen[v]) throw GraphError("pag_to_mag: priority is not a permutation");
            seen[v] = 1;
            rank[v] = i;
        }
    }

    MixedGraph m = pag;
    std::vector<Mask> circ(p, 0);
    for (int a = 0; a < p; ++a)
        for (int b = a + 1; b < p; ++b) {
            if (!pag.adjacent(a, b)) continue;
            Mark ma = pag.mark(b, a), mb = pag.mark(a, b);
            if (ma == Mark::Circle && mb == Mark::Circle) {
                circ[a] |= bit(b);
                circ[b] |= bit(a);
            } else if (ma == Mark::Circle) {
                m.set_mark(b, a, Mark::Tail);
            } else if (mb == Mark::Circle) {
                m.set_mark(a, b, Mark::Tail);
            }
        }

    // maximum cardinality search over the circle component
    std::vector<int> number(p, -1), weight(p, 0);
    for (int step = 0; step < p; ++step) {
        int best = -1;
        for (int v = 0; v < p; ++v) {
            if (number[v] >= 0) continue;
            if (best < 0 || weight[v] > weight[best] || (weight[v] == weight[best] && rank[v] < rank[best])) best = v;
        }
        number[best] = step;
        for (Mask x = circ[best]; x; x &= x - 1) ++weight[std::countr_zero(x)];
    }
    for (int v = 0; v < p; ++v) {
        Mask earlier = 0;
        for (Mask x = circ[v]; x; x &= x - 1) {
            int u = std::countr_zero(x);
            if (number[u] < number[v]) earlier |= bit(u);
        }
        for (Mask x = earlier; x; x &= x - 1) {
            int u = std::countr_zero(x);
            if ((earlier & ~bit(u) & ~circ[u]) != 0) throw GraphError("pag_to_mag: circle component is not chordal");
            m.set_edge(u, v, Mark::Tail, Mark::Arrowhead);
        }
    }
    if (!is_ancestral(m)) throw GraphError("pag_to_mag: completion is not ancestral");
    if (!is_maximal(m)) throw GraphError("pag_to_mag: completion is not maximal");
    return m;
}

MixedGraph mag_to_pag(const MixedGraph& mag) {
    if (mag.has_circles() || !conforms(mag, GraphClass::Mag)) throw GraphError("mag_to_pag: input is not a MAG");
    if (!is_ancestral(mag)) throw GraphError("mag_to_pag: input is not ancestral");
    IndependenceOracle oracle = [&](int x, int y, const VarSet& z) { return m_separated_mag(mag, x, y, to_mask(z)); };
    return fci(oracle, mag.names(), mag.size() - 2, ConflictPolicy::Throw);
}

PagCheck check_pag(const MixedGraph& pag) {
    PagCheck out;
    MixedGraph mag;
    try {
        mag = pag_to_mag(pag);
    } catch (const GraphError& e) {
        out.failed_stage = e.what();
        return out;
    }
    MixedGraph back;
    try {
        back = mag_to_pag(mag);
    } catch (const std::exception& e) {
        out.failed_stage = std::string("mag_to_pag: ") + e.what();
        return out;
    }
    if (!(back == pag)) {
        out.failed_stage = "round trip: PAG rebuilt from its member MAG differs";
        return out;
    }
    out.valid = true;
    out.member_mag = std::move(mag);
    return out;
}

bool is_valid_pag(const MixedGraph& pag) { return check_pag(pag).valid; }

}  // namespace dcfci
