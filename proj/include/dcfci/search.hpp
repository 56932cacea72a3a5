#pragma once

#include <string>
#include <vector>

#include "dcfci/evidence.hpp"
#include "dcfci/parallel.hpp"
#include "dcfci/scoring.hpp"

namespace dcfci {

enum class TieMode { Strict, EqualUpper, Overlap };
enum class PlausibleRegion { PossibleDSep, Adjacency };

struct DcfciConfig {
    double alpha = 0.05;
    int k = 1;
    int r_max = -1;  // negative: p - 2
    int n_r_cap = 12;
    double certainty_threshold = 0.95;
    TieMode ties = TieMode::Strict;
    PlausibleRegion region = PlausibleRegion::PossibleDSep;
    Execution exec = Execution::Serial;
};

void validate(const DcfciConfig& cfg, int p);
TieMode parse_tie_mode(const std::string& s);
std::string to_string(TieMode m);

struct CandidatePag {
    MixedGraph graph;
    SepSetMap sepmap;
    ScoreBounds score;
    std::size_t difference_size = 0;
    int r = 0;
};

struct PotentialSeparator {
    int x = 0, y = 0;
    VarSet s;
    bool operator==(const PotentialSeparator&) const = default;
};

// Sets of size r inside the plausible region of each adjacent pair that the
// evidence does not reject: p > alpha, or P(H0) > 0.5 when the p gate fails.
// CI failures skip the set and append a message to `warnings`.
std::vector<PotentialSeparator> potential_min_seps(const CandidatePag& c, Evidence& ev, int r,
                                                   const DcfciConfig& cfg, std::vector<std::string>* warnings = nullptr);

struct Expansion {
    std::vector<CandidatePag> candidates;
    int dropped = 0;
};

// One candidate per subset of the separators: edges cut, marks re-derived,
// kept only when the result is a valid PAG in which every recorded separator
// separates and is minimal. The empty subset is the candidate itself.
Expansion expand_candidates(const CandidatePag& c, const std::vector<PotentialSeparator>& seps, int r,
                            Evidence& ev, const DcfciConfig& cfg);

struct RankedEntry {
    std::string hash;
    ScoreBounds score;
    std::size_t difference_size = 0;
};

struct IterationTrace {
    int r = 0;
    int potential = 0;  // separators found over all retained candidates
    int pool = 0;       // distinct candidates scored
    int dropped = 0;
    std::vector<RankedEntry> ranked;
    int retained = 0;
};

struct DcfciResult {
    std::vector<CandidatePag> candidates;
    std::vector<IterationTrace> trace;
    std::vector<std::string> warnings;
};

// Indices (into ranked order) kept under the tie mode.
int retained_count(const std::vector<ScoreBounds>& ranked, int k, TieMode mode);

DcfciResult run_dcfci(Evidence& ev, const std::vector<std::string>& names, const DcfciConfig& cfg);

// Every skeleton and collider hypothesis of every true r-PAG, r <= r_max,
// has posterior at least 0.5.
bool weak_faithfulness_holds(const MixedGraph& truth_mag, Evidence& ev, int r_max);

}  // namespace dcfci
