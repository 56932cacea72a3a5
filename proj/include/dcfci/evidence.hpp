#pragma once

#include <map>
#include <memory>

#include "dcfci/bayes.hpp"
#include "dcfci/ci_test.hpp"

namespace dcfci {

// Source of CI test results and posteriors. Implementations are safe to
// call from several threads.
class Evidence {
public:
    virtual ~Evidence() = default;
    virtual int variables() const = 0;
    virtual CITestResult test(const CITestKey& key) = 0;
    virtual PosteriorPair posterior(const CITestKey& key) = 0;
};

// Holds a reference to the data, which must outlive it.
class DataEvidence : public Evidence {
public:
    explicit DataEvidence(const Dataset& data, BffOptions opt = {});
    int variables() const override { return data_.cols(); }
    CITestResult test(const CITestKey& key) override;
    PosteriorPair posterior(const CITestKey& key) override;
    const CITestCache& cache() const { return cache_; }

private:
    const Dataset& data_;
    BffOptions opt_;
    CITestCache cache_;
};

// Precomputed p-values; statistics are recovered as chi-square upper
// quantiles. p = 0 maps to kZeroPStatistic.
class TableEvidence : public Evidence {
public:
    static constexpr double kZeroPStatistic = 2000.0;

    struct Entry {
        double p_value;
        int df;
    };

    TableEvidence(int variables, double n, BffOptions opt = {});
    void add(const CITestKey& key, double p_value, int df = 1);
    int variables() const override { return p_; }
    CITestResult test(const CITestKey& key) override;
    PosteriorPair posterior(const CITestKey& key) override;
    double sample_size() const { return n_; }

private:
    int p_;
    double n_;
    BffOptions opt_;
    std::map<CITestKey, Entry> table_;
};

// Parses `x,y,z,p_value,df` rows (z space separated names, may be empty),
// with a `# n: <size>` header line.
std::unique_ptr<TableEvidence> parse_ci_table(const std::string& text, const std::vector<std::string>& names);

// Exact answers from m-separation in a MAG; p-value 1 or 0, posterior 1 or 0.
class OracleEvidence : public Evidence {
public:
    explicit OracleEvidence(const MixedGraph& mag);
    int variables() const override;
    CITestResult test(const CITestKey& key) override;
    PosteriorPair posterior(const CITestKey& key) override;

private:
    std::shared_ptr<const MixedGraph> mag_;
};

}  // namespace dcfci
