#include "dcfci/evidence.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "dcfci/chi_square.hpp"
#include "dcfci/separation.hpp"

namespace dcfci {

DataEvidence::DataEvidence(const Dataset& data, BffOptions opt) : data_(data), opt_(opt) {}

CITestResult DataEvidence::test(const CITestKey& key) {
    return cache_.get(key, [this](const CITestKey& k) { return lr_test(data_, k); });
}

PosteriorPair DataEvidence::posterior(const CITestKey& key) {
    return dcfci::posterior(test(key), data_.rows(), opt_);
}

TableEvidence::TableEvidence(int variables, double n, BffOptions opt) : p_(variables), n_(n), opt_(opt) {}

void TableEvidence::add(const CITestKey& key, double p_value, int df) {
    if (!(p_value >= 0 && p_value <= 1)) throw InputError("CI table: p-value outside [0,1]");
    if (df < 1) throw InputError("CI table: df must be positive");
    table_[key] = {p_value, df};
}

CITestResult TableEvidence::test(const CITestKey& key) {
    auto it = table_.find(key);
    if (it == table_.end()) throw std::out_of_range("CI table has no entry for test (" + std::to_string(key.x) + "," +
                                                    std::to_string(key.y) + ")");
    CITestResult r;
    r.df = it->second.df;
    r.p_value = r.p1 = r.p2 = it->second.p_value;
    r.statistic = r.p_value > 0 ? chi_square_isf(r.p_value, r.df) : kZeroPStatistic;
    return r;
}

PosteriorPair TableEvidence::posterior(const CITestKey& key) { return dcfci::posterior(test(key), n_, opt_); }

std::unique_ptr<TableEvidence> parse_ci_table(const std::string& text, const std::vector<std::string>& names) {
    auto index = [&](const std::string& s, int lineno) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == s) return static_cast<int>(i);
        throw InputError("CI table line " + std::to_string(lineno) + ": unknown variable '" + s + "'");
    };
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    double n = -1;
    std::vector<std::tuple<CITestKey, double, int>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto pos = line.find("n:");
            if (pos != std::string::npos) n = std::stod(line.substr(pos + 2));
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) f.push_back(item);
        if (line.back() == ',') f.emplace_back();
        if (f.size() == 5 && f[0] == "x" && f[1] == "y") continue;  // header
        if (f.size() != 5) throw InputError("CI table line " + std::to_string(lineno) + ": expected x,y,z,p_value,df");
        VarSet z;
        std::stringstream zs(f[2]);
        std::string zn;
        while (zs >> zn) z.push_back(index(zn, lineno));
        double p;
        int df;
        // strtod, not stod: printed p-values can be subnormal
        char* end = nullptr;
        p = std::strtod(f[3].c_str(), &end);
        bool ok = !f[3].empty() && *end == '\0';
        try {
            df = std::stoi(f[4]);
        } catch (const std::exception&) {
            ok = false;
        }
        if (!ok) throw InputError("CI table line " + std::to_string(lineno) + ": bad number");
        CITestKey key;
        try {
            key = CITestKey::make(index(f[0], lineno), index(f[1], lineno), z);
        } catch (const std::invalid_argument& e) {
            throw InputError("CI table line " + std::to_string(lineno) + ": " + e.what());
        }
        rows.emplace_back(key, p, df);
    }
    if (!(n > 0)) throw InputError("CI table: missing '# n: <sample size>' header");
    auto t = std::make_unique<TableEvidence>(static_cast<int>(names.size()), n);
    for (auto& [k, p, df] : rows) t->add(k, p, df);
    return t;
}

OracleEvidence::OracleEvidence(const MixedGraph& mag) : mag_(std::make_shared<MixedGraph>(mag)) {}

int OracleEvidence::variables() const { return mag_->size(); }

CITestResult OracleEvidence::test(const CITestKey& key) {
    bool sep = m_separated_mag(*mag_, key.x, key.y, to_mask(key.z));
    CITestResult r;
    r.df = 1;
    r.p_value = r.p1 = r.p2 = sep ? 1.0 : 0.0;
    r.statistic = sep ? 0.0 : std::numeric_limits<double>::infinity();
    return r;
}

PosteriorPair OracleEvidence::posterior(const CITestKey& key) {
    bool sep = m_separated_mag(*mag_, key.x, key.y, to_mask(key.z));
    return sep ? PosteriorPair{1.0, 0.0} : PosteriorPair{0.0, 1.0};
}

}  // namespace dcfci
