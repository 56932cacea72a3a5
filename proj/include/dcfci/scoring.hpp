#pragma once

#include <cstdint>
#include <map>

#include "dcfci/evidence.hpp"
#include "dcfci/mec.hpp"
#include "dcfci/parallel.hpp"
#include "dcfci/separation.hpp"

namespace dcfci {

enum class HypothesisKind { Independence, Dependence };

// Deduplicated hypotheses in key order. A key never carries both kinds.
class HypothesisSet {
public:
    using Map = std::map<CITestKey, HypothesisKind>;

    // Throws GraphError if the key is already present with the other kind.
    void insert(const CITestKey& key, HypothesisKind kind);
    void merge(const HypothesisSet& other);
    bool contains(const CITestKey& key) const { return map_.count(key) != 0; }
    HypothesisKind kind(const CITestKey& key) const { return map_.at(key); }
    std::size_t size() const { return map_.size(); }
    bool empty() const { return map_.empty(); }
    Map::const_iterator begin() const { return map_.begin(); }
    Map::const_iterator end() const { return map_.end(); }
    bool operator==(const HypothesisSet&) const = default;

private:
    Map map_;
};

struct ScoreBounds {
    double lower = 1;
    double upper = 1;
};

// Number of pairwise hypotheses over p variables with conditioning sets up
// to r_max: C(p,2) * sum_{k<=r_max} C(p-2,k).
std::uint64_t pairwise_hypothesis_count(int p, int r_max);

ScoreBounds frechet_bounds(const std::vector<double>& probs);

// Every pair, every conditioning set of size <= r_max, kind by m-separation.
HypothesisSet all_pairwise_hypotheses(const MSeparation& sep, int r_max);

// (a) dependence for adjacent pairs given every set of size <= r,
// (b) independence at each minimal separator of size <= r,
// (c) dependence at each minimal separator with one element dropped.
HypothesisSet skeleton_hypotheses(const MSeparation& sep, const SepSetMap& minseps, int r);

// Dependence given S + {b} for each collider with order <a,b,c>, each pair
// it corresponds to and each minimal separator S of that pair.
HypothesisSet collider_hypotheses(const MixedGraph& pag, const SepSetMap& minseps);

// Everything above for a valid PAG at size r. Throws GraphError when the
// graph is not a valid PAG.
struct ScoredPag {
    MSeparation sep;
    SepSetMap minseps;
    HypothesisSet hypotheses;
};
ScoredPag pag_hypotheses(const MixedGraph& pag, int r);

// Posterior of a hypothesis: P(H0) for independence, P(H1) for dependence.
double hypothesis_probability(Evidence& ev, const CITestKey& key, HypothesisKind kind);

ScoreBounds straightforward_score(const MixedGraph& pag, Evidence& ev);

struct ComparableScore {
    ScoreBounds bounds;
    std::size_t difference_size = 0;
};

// Joint scoring of r-PAG candidates: union of their hypothesis keys, kinds
// filled in per candidate by m-separation, hypotheses shared by every
// candidate dropped, Frechet bounds over what remains.
std::vector<ComparableScore> comparable_scores(const std::vector<MixedGraph>& candidates, int r, Evidence& ev,
                                               Execution ex = Execution::Serial);

// Indices sorted by upper desc, lower desc, then `tiebreak` ascending.
std::vector<int> rank_candidates(const std::vector<ScoreBounds>& scores, const std::vector<std::string>& tiebreak);

}  // namespace dcfci
