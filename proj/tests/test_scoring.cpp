#include <doctest.h>

#include <random>

#include "dcfci/fci.hpp"
#include "dcfci/pag_mag.hpp"
#include "dcfci/scoring.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "example_ci.hpp"

using namespace dcfci;
using example_ci::A;
using example_ci::B;
using example_ci::X;
using example_ci::Y;

namespace {

// Posteriors that depend only on the key, for comparing score bounds.
class HashEvidence : public Evidence {
public:
    explicit HashEvidence(int p) : p_(p) {}
    int variables() const override { return p_; }
    CITestResult test(const CITestKey&) override { return {}; }
    PosteriorPair posterior(const CITestKey& k) override {
        double h = static_cast<double>(CITestKeyHash{}(k) % 1000) / 1000.0;
        return {h, 1 - h};
    }

private:
    int p_;
};

HypothesisSet hypotheses_with(const MixedGraph& pag, const MixedGraph& mag, int r) {
    auto sep = MSeparation::for_valid_pag(pag, mag);
    auto ms = minimal_separator_map(sep, r);
    auto h = skeleton_hypotheses(sep, ms, r);
    h.merge(collider_hypotheses(pag, ms));
    return h;
}

}  // namespace

TEST_CASE("pairwise hypothesis counts") {
    CHECK(pairwise_hypothesis_count(4, 2) == 24);
    CHECK(pairwise_hypothesis_count(5, 3) == 80);
    CHECK(pairwise_hypothesis_count(10, 8) == 11520);
    CHECK(pairwise_hypothesis_count(20, 18) == 49807360);
    CHECK(pairwise_hypothesis_count(4, 0) == 6);
    CHECK(all_pairwise_hypotheses(MSeparation(fixture::true_mag()), 2).size() == 24);
    std::mt19937_64 rng(1);
    auto m = oracle::random_mag(5, 0.4, 0.2, rng);
    CHECK(all_pairwise_hypotheses(MSeparation(m), 3).size() == 80);
    MixedGraph two(oracle::names(2));
    auto h = all_pairwise_hypotheses(MSeparation(two), 0);
    REQUIRE(h.size() == 1);
    CHECK(h.begin()->second == HypothesisKind::Independence);
}

TEST_CASE("Frechet bounds") {
    auto b = frechet_bounds({0.388, 0.802});
    CHECK(b.lower == doctest::Approx(0.190));
    CHECK(b.upper == doctest::Approx(0.388));
    b = frechet_bounds({0.612, 0.198});
    CHECK(b.lower == 0.0);
    CHECK(b.upper == doctest::Approx(0.198));
    b = frechet_bounds({1.0, 1.0, 1.0});
    CHECK(b.lower == 1.0);
    CHECK(b.upper == 1.0);
    b = frechet_bounds({});
    CHECK(b.lower == 1.0);
    CHECK(b.upper == 1.0);
    CHECK_THROWS(frechet_bounds({0.5, 1.5}));

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.5, 1);
    for (int rep = 0; rep < 500; ++rep) {
        std::vector<double> v(1 + rep % 7);
        double prod = 1, sum = 0, mn = 1;
        for (double& x : v) x = u(rng), prod *= x, sum += x, mn = std::min(mn, x);
        auto f = frechet_bounds(v);
        CHECK(f.upper == mn);
        CHECK(f.lower == doctest::Approx(std::max(0.0, sum - (v.size() - 1))));
        CHECK(f.lower <= prod + 1e-12);
        CHECK(prod <= f.upper);
    }
}

TEST_CASE("hypothesis set rejects contradictory kinds") {
    HypothesisSet h;
    h.insert(CITestKey::make(0, 1, {}), HypothesisKind::Dependence);
    h.insert(CITestKey::make(1, 0, {}), HypothesisKind::Dependence);
    CHECK(h.size() == 1);
    CHECK_THROWS_AS(h.insert(CITestKey::make(0, 1, {}), HypothesisKind::Independence), GraphError);
}

TEST_CASE("skeleton and collider hypotheses of the true PAG") {
    auto pag = fixture::true_pag();
    auto scored = pag_hypotheses(pag, 2);
    auto sk = skeleton_hypotheses(scored.sep, scored.minseps, 2);
    CHECK(sk.kind(CITestKey::make(X, Y, {A, B})) == HypothesisKind::Independence);
    CHECK(sk.kind(CITestKey::make(X, Y, {A})) == HypothesisKind::Dependence);
    CHECK(sk.kind(CITestKey::make(X, Y, {B})) == HypothesisKind::Dependence);
    CHECK(sk.kind(CITestKey::make(B, X, {})) == HypothesisKind::Independence);
    auto co = collider_hypotheses(pag, scored.minseps);
    CHECK(co.contains(CITestKey::make(X, B, {A})));
    CHECK(co.kind(CITestKey::make(X, B, {A})) == HypothesisKind::Dependence);
    // empty separator: nothing from (c)
    CHECK(!sk.contains(CITestKey::make(B, X, {Y})));

    // complete PAG at r = 0: only marginal dependencies
    auto complete = MixedGraph::complete(oracle::names(5));
    auto ch = pag_hypotheses(complete, 0).hypotheses;
    CHECK(ch.size() == 10);
    for (const auto& [k, kind] : ch) {
        CHECK(k.z.empty());
        CHECK(kind == HypothesisKind::Dependence);
    }

    // recorded separator for an adjacent pair
    SepSetMap bad;
    bad.add(A, Y, {});
    CHECK_THROWS_AS(skeleton_hypotheses(scored.sep, bad, 2), GraphError);
}

TEST_CASE("colliders of the naive FCI PAG") {
    auto pag = fixture::fci_pag();
    auto scored = pag_hypotheses(pag, 2);
    auto co = collider_hypotheses(pag, scored.minseps);
    CHECK(co.kind(CITestKey::make(A, Y, {B})) == HypothesisKind::Dependence);
    CHECK(co.kind(CITestKey::make(B, X, {A})) == HypothesisKind::Dependence);
    CHECK(collider_hypotheses(fixture::cfci_pag(), pag_hypotheses(fixture::cfci_pag(), 2).minseps).size() == 1);
    auto chain = parse_graph("# vars: A,B,C\nA o-o B\nB o-o C\n");
    CHECK(collider_hypotheses(chain, pag_hypotheses(chain, 1).minseps).empty());
}

TEST_CASE("straightforward scores on the tabulated tests") {
    auto ev = example_ci::evidence();
    auto check = [&](const MixedGraph& g, double upper) {
        auto s = straightforward_score(g, *ev);
        CHECK(s.lower == doctest::Approx(0).epsilon(1e-3));
        CHECK(std::abs(s.upper - upper) < 1e-3);
    };
    check(fixture::true_pag(), 0.612);
    check(fixture::fci_pag(), 0.0136);
    check(fixture::dcd_pag(), 0.0366);
    check(fixture::cfci_pag(), 0.0366);
    check(fixture::bccd_adjusted(), 0.1848);
    CHECK_THROWS_AS(straightforward_score(fixture::bccd_pag(), *ev), GraphError);
}

TEST_CASE("comparable scores of the naive and conservative PAGs") {
    auto ev = example_ci::evidence();
    auto s = comparable_scores({fixture::fci_pag(), fixture::cfci_pag()}, 2, *ev);
    CHECK(s[0].difference_size == 2);
    CHECK(std::abs(s[0].bounds.lower - 0.486) < 1e-3);
    CHECK(s[0].bounds.upper > 0.671 - 1e-3);
    CHECK(s[0].bounds.upper < 0.672 + 1e-3);
    CHECK(s[1].bounds.lower == 0.0);
    CHECK(std::abs(s[1].bounds.upper - 0.185) < 1e-3);

    auto swapped = comparable_scores({fixture::cfci_pag(), fixture::fci_pag()}, 2, *ev);
    CHECK(swapped[1].bounds.lower == s[0].bounds.lower);
    CHECK(swapped[0].bounds.upper == s[1].bounds.upper);

    auto single = comparable_scores({fixture::true_pag()}, 2, *ev);
    CHECK(single[0].bounds.lower == 1.0);
    CHECK(single[0].difference_size == 0);
    auto twins = comparable_scores({fixture::true_pag(), fixture::true_pag()}, 2, *ev);
    CHECK(twins[1].bounds.upper == 1.0);
    CHECK_THROWS(comparable_scores({fixture::true_pag(), fixture::bccd_pag()}, 2, *ev));

    auto par = comparable_scores({fixture::fci_pag(), fixture::cfci_pag(), fixture::true_pag()}, 2, *ev,
                                 Execution::Parallel);
    auto ser = comparable_scores({fixture::fci_pag(), fixture::cfci_pag(), fixture::true_pag()}, 2, *ev);
    for (int i = 0; i < 3; ++i) {
        CHECK(par[i].bounds.lower == ser[i].bounds.lower);
        CHECK(par[i].bounds.upper == ser[i].bounds.upper);
    }
}

TEST_CASE("ranking") {
    std::vector<ScoreBounds> s{{0.1, 0.5}, {0.3, 0.5}, {0.9, 0.9}, {0.3, 0.5}};
    auto order = rank_candidates(s, {"d", "c", "a", "b"});
    CHECK(order == std::vector<int>{2, 3, 1, 0});
}

TEST_CASE("two completions of a PAG give the same hypotheses and scores") {
    std::mt19937_64 rng(3);
    HashEvidence ev(6);
    int checked = 0;
    for (int rep = 0; rep < 100; ++rep) {
        auto m = oracle::random_mag(5 + rep % 2, 0.35, 0.15, rng);
        auto pag = mag_to_pag(m);
        std::vector<int> prio(m.size());
        std::iota(prio.begin(), prio.end(), 0);
        std::shuffle(prio.begin(), prio.end(), rng);
        auto m1 = pag_to_mag(pag), m2 = pag_to_mag(pag, prio);
        for (int r = 0; r <= m.size() - 2; ++r) {
            auto h1 = hypotheses_with(pag, m1, r), h2 = hypotheses_with(pag, m2, r);
            CHECK(h1 == h2);
            // the original MAG is a third member
            CHECK(h1 == hypotheses_with(pag, m, r));
            std::vector<double> p1, p2;
            for (const auto& [k, kind] : h1) p1.push_back(hypothesis_probability(ev, k, kind));
            for (const auto& [k, kind] : h2) p2.push_back(hypothesis_probability(ev, k, kind));
            CHECK(frechet_bounds(p1).lower == frechet_bounds(p2).lower);
            CHECK(frechet_bounds(p1).upper == frechet_bounds(p2).upper);
        }
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("different classes give different hypothesis sets") {
    std::mt19937_64 rng(4);
    int differing = 0;
    for (int rep = 0; rep < 150; ++rep) {
        auto a = mag_to_pag(oracle::random_mag(5, 0.4, 0.2, rng));
        auto b = mag_to_pag(oracle::random_mag(5, 0.4, 0.2, rng));
        if (mec_signature(a) == mec_signature(b)) continue;
        ++differing;
        CHECK(!(pag_hypotheses(a, 3).hypotheses == pag_hypotheses(b, 3).hypotheses));
    }
    CHECK(differing > 100);
}

TEST_CASE("a single edge is scored by its one dependence hypothesis") {
    TableEvidence ev(2, 1000);
    ev.add(CITestKey::make(0, 1, {}), 0.4);
    auto g = parse_graph("# vars: A,B\nA o-o B\n");
    auto s = straightforward_score(g, ev);
    auto post = ev.posterior(CITestKey::make(0, 1, {}));
    CHECK(s.lower == post.p_h1);
    CHECK(s.upper == post.p_h1);
    auto empty = straightforward_score(MixedGraph({"A", "B"}), ev);
    CHECK(empty.upper == post.p_h0);
}
