#include <doctest.h>

#include <algorithm>
#include <random>

#include "dcfci/mec.hpp"
#include "dcfci/pag_mag.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dcfci;

namespace {

// Every minimal separator by exhaustive subset search.
std::vector<Mask> brute_minimal(const MixedGraph& g, int x, int y) {
    const int p = g.size();
    std::vector<Mask> seps;
    for (Mask z = 0; z < (Mask{1} << p); ++z)
        if (!(z & (bit(x) | bit(y))) && oracle::m_separated(g, x, y, z)) seps.push_back(z);
    std::vector<Mask> out;
    for (Mask z : seps) {
        bool minimal = std::none_of(seps.begin(), seps.end(), [&](Mask w) { return w != z && (w & z) == w; });
        if (minimal) out.push_back(z);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("minimal separators of the true MAG") {
    auto g = fixture::true_mag();
    CHECK(minimal_separators(g, 1, 2, 2) == std::vector<VarSet>{{}});
    CHECK(minimal_separators(g, 2, 3, 2) == std::vector<VarSet>{{0, 1}});
    CHECK(minimal_separators(g, 2, 3, 1).empty());
    CHECK(minimal_separators(g, 0, 3, 2).empty());  // adjacent
}

TEST_CASE("minimal separators agree with exhaustive search") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 120; ++rep) {
        int p = 3 + rep % 3;
        auto g = oracle::random_mag(p, 0.4, 0.3, rng);
        for (int x = 0; x < p; ++x)
            for (int y = x + 1; y < p; ++y) {
                if (g.adjacent(x, y)) continue;
                std::vector<Mask> got;
                for (auto& s : minimal_separators(g, x, y, p)) got.push_back(to_mask(s));
                std::sort(got.begin(), got.end());
                REQUIRE(got == brute_minimal(g, x, y));
            }
    }
}

TEST_CASE("triples with order on small graphs") {
    auto chain = parse_graph("# vars: X,A,Y\nX o-o A\nA o-o Y\n");
    auto t = triples_with_order(chain);
    REQUIRE(t.size() == 1);
    CHECK(t[0].triple == Triple{0, 1, 2});
    CHECK(t[0].order == 0);
    CHECK(t[0].kind == TripleKind::NonCollider);
    CHECK(corresponds(chain, Triple{0, 1, 2}) == std::vector<std::pair<int, int>>{{0, 2}});
    CHECK_THROWS_AS(corresponds(chain, Triple{0, 2, 1}), GraphError);

    // true PAG: <A,B,Y> is an order-1 non-collider via the path <X,A,B,Y>
    auto pag = fixture::true_pag();
    auto all = triples_with_order(pag);
    auto it = std::find_if(all.begin(), all.end(), [](auto& w) { return w.triple == Triple{0, 1, 3}; });
    REQUIRE(it != all.end());
    CHECK(it->order == 1);
    CHECK(it->kind == TripleKind::NonCollider);
    CHECK(corresponds(pag, Triple{0, 1, 3}) == std::vector<std::pair<int, int>>{{2, 3}});
}

TEST_CASE("Markov equivalent MAGs share triples with order") {
    std::mt19937_64 rng(32);
    for (int rep = 0; rep < 150; ++rep) {
        int p = 4 + rep % 3;
        auto m = oracle::random_mag(p, 0.45, 0.3, rng);
        auto pag = mag_to_pag(m);
        std::vector<int> pr(p);
        for (int i = 0; i < p; ++i) pr[i] = (i * 3 + 1) % p == i ? i : p - 1 - i;
        auto m1 = pag_to_mag(pag);
        std::vector<int> rev(p);
        for (int i = 0; i < p; ++i) rev[i] = p - 1 - i;
        auto m2 = pag_to_mag(pag, rev);
        REQUIRE(triples_with_order(m1) == triples_with_order(m2));
        REQUIRE(triples_with_order(m) == triples_with_order(m1));
    }
}

TEST_CASE("triples with order characterize minimal separators") {
    std::mt19937_64 rng(33);
    int checked = 0;
    for (int rep = 0; rep < 200; ++rep) {
        int p = 3 + rep % 3;
        auto g = oracle::random_mag(p, 0.45, 0.3, rng);
        for (auto& t : triples_with_order(g)) {
            for (auto [x, y] : corresponds(g, t.triple)) {
                auto seps = brute_minimal(g, x, y);
                REQUIRE(!seps.empty());
                bool in_all = std::all_of(seps.begin(), seps.end(), [&](Mask s) { return (s >> t.triple.b) & 1; });
                bool in_none = std::none_of(seps.begin(), seps.end(), [&](Mask s) { return (s >> t.triple.b) & 1; });
                if (t.kind == TripleKind::NonCollider)
                    REQUIRE(in_all);
                else
                    REQUIRE(in_none);
                ++checked;
            }
        }
        // each member of a minimal separator is the middle of some non-collider with order
        for (int x = 0; x < p; ++x)
            for (int y = x + 1; y < p; ++y) {
                if (g.adjacent(x, y)) continue;
                for (Mask s : brute_minimal(g, x, y))
                    for (int zi : from_mask(s)) {
                        bool found = false;
                        for (auto& t : triples_with_order(g)) {
                            if (t.triple.b != zi || t.kind != TripleKind::NonCollider) continue;
                            for (auto [u, v] : corresponds(g, t.triple))
                                for (Mask w : brute_minimal(g, u, v))
                                    if ((w >> zi) & 1) found = true;
                        }
                        REQUIRE(found);
                    }
            }
    }
    CHECK(checked > 100);
}

TEST_CASE("signature separates classes") {
    CHECK(mec_signature(fixture::true_pag()) == mec_signature(fixture::true_mag()));
    CHECK_FALSE(mec_signature(fixture::fci_pag()) == mec_signature(fixture::true_mag()));
}
