#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcfci/parallel.hpp"
#include "dcfci/search.hpp"

namespace dcfci {

struct Scenario {
    int replicates = 30;
    int p = 5;
    std::vector<int> n{10000};
    std::string data = "gaussian";  // or "mixed"
    double density = 0.5;
    double bidirected = 0.3;
    double alpha = 0.05;
    int k = 1;
    TieMode ties = TieMode::Strict;
    int r_max = -1;
    std::uint64_t seed = 1;
};

// key=value lines; '#' starts a comment. Unknown keys are errors.
Scenario parse_scenario(const std::string& text);
std::string format_scenario(const Scenario& s);

struct BenchRow {
    std::uint64_t seed = 0;
    int n = 0;
    std::string algo;
    bool ok = true;
    bool valid = false;
    bool recovered = false;
    bool recovered_equal_upper = false;
    bool recovered_overlap = false;
    int shd = 0;
    double fdr = 0, for_rate = 0;
    double seconds = 0;
    std::string error;
};

// Rows ordered by replicate, then n, then algorithm (fci, dcfci).
// Replicates run as a parallel map under Execution::Parallel.
std::vector<BenchRow> run_benchmark(const Scenario& s, Execution ex = Execution::Serial);

std::string format_results(const std::vector<BenchRow>& rows, bool timing = true);
std::string format_summary(const std::vector<BenchRow>& rows);

struct Quantiles {
    double min = 0, q1 = 0, median = 0, mean = 0, q3 = 0, max = 0;
};
Quantiles summarize(std::vector<double> v);

}  // namespace dcfci
