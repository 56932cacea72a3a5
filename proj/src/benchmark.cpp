#include "dcfci/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "dcfci/fci.hpp"
#include "dcfci/metrics.hpp"
#include "dcfci/pag_mag.hpp"
#include "dcfci/regression.hpp"
#include "dcfci/simulate.hpp"

namespace dcfci {

namespace {

std::string trim(std::string s) {
    auto ws = [](unsigned char c) { return std::isspace(c); };
    while (!s.empty() && ws(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && ws(s[i])) ++i;
    return s.substr(i);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
    std::istringstream in(v);
    T out{};
    in >> out;
    if (in.fail() || !in.eof()) throw InputError("scenario: bad value for " + key + ": " + v);
    return out;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw InputError("scenario line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "replicates") s.replicates = parse_number<int>(key, val);
        else if (key == "p") s.p = parse_number<int>(key, val);
        else if (key == "n") {
            s.n.clear();
            std::istringstream list(val);
            std::string item;
            while (std::getline(list, item, ',')) s.n.push_back(parse_number<int>(key, trim(item)));
        } else if (key == "data") s.data = val;
        else if (key == "density") s.density = parse_number<double>(key, val);
        else if (key == "bidirected") s.bidirected = parse_number<double>(key, val);
        else if (key == "alpha") s.alpha = parse_number<double>(key, val);
        else if (key == "k") s.k = parse_number<int>(key, val);
        else if (key == "ties") {
            try {
                s.ties = parse_tie_mode(val);
            } catch (const std::invalid_argument& e) {
                throw InputError(std::string("scenario: ") + e.what());
            }
        } else if (key == "rmax") s.r_max = parse_number<int>(key, val);
        else if (key == "seed") s.seed = parse_number<std::uint64_t>(key, val);
        else throw InputError("scenario line " + std::to_string(lineno) + ": unknown key " + key);
    }
    if (s.replicates < 0) throw InputError("scenario: replicates must be >= 0");
    if (s.p < 2 || s.p > 20) throw InputError("scenario: p must lie in [2,20]");
    if (s.n.empty()) throw InputError("scenario: n list is empty");
    for (int n : s.n)
        if (n < 10) throw InputError("scenario: n must be at least 10");
    if (s.data != "gaussian" && s.data != "mixed") throw InputError("scenario: data must be gaussian or mixed");
    if (!(s.density >= 0 && s.density <= 1) || !(s.bidirected >= 0 && s.bidirected <= 1))
        throw InputError("scenario: density and bidirected must lie in [0,1]");
    if (!(s.alpha > 0 && s.alpha < 1)) throw InputError("scenario: alpha must lie in (0,1)");
    if (s.k < 1) throw InputError("scenario: k must be >= 1");
    return s;
}

std::string format_scenario(const Scenario& s) {
    std::ostringstream o;
    o << "replicates=" << s.replicates << "\np=" << s.p << "\nn=";
    for (std::size_t i = 0; i < s.n.size(); ++i) o << (i ? "," : "") << s.n[i];
    o << "\ndata=" << s.data << "\ndensity=" << s.density << "\nbidirected=" << s.bidirected << "\nalpha=" << s.alpha
      << "\nk=" << s.k << "\nties=" << to_string(s.ties) << "\nrmax=" << s.r_max << "\nseed=" << s.seed << "\n";
    return o.str();
}

namespace {

using Clock = std::chrono::steady_clock;

void score_against(BenchRow& row, const MixedGraph& inferred, const MixedGraph& truth) {
    row.valid = is_valid_pag(inferred);
    row.shd = shd(inferred, truth);
    row.fdr = fdr(inferred, truth);
    row.for_rate = for_rate(inferred, truth);
    row.recovered = inferred == truth;
}

BenchRow run_fci(const Dataset& data, const GroundTruth& gt, const Scenario& s) {
    BenchRow row;
    row.algo = "fci";
    auto t0 = Clock::now();
    try {
        DataEvidence ev(data);
        IndependenceOracle indep = [&](int x, int y, const VarSet& z) {
            try {
                return ev.test(CITestKey::make(x, y, z)).p_value > s.alpha;
            } catch (const FitFailure&) {
                return false;
            } catch (const DegenerateInput&) {
                return false;
            }
        };
        int r_max = s.r_max < 0 ? s.p - 2 : s.r_max;
        auto pag = fci(indep, data.names(), r_max, ConflictPolicy::Keep);
        row.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        score_against(row, pag, gt.pag);
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

BenchRow run_dc(const Dataset& data, const GroundTruth& gt, const Scenario& s) {
    BenchRow row;
    row.algo = "dcfci";
    auto t0 = Clock::now();
    try {
        DataEvidence ev(data);
        DcfciConfig cfg;
        cfg.alpha = s.alpha;
        cfg.k = s.k;
        cfg.ties = s.ties;
        cfg.r_max = s.r_max;
        auto res = run_dcfci(ev, data.names(), cfg);
        row.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        score_against(row, res.candidates.front().graph, gt.pag);
        for (const auto& c : res.candidates) row.valid = row.valid && is_valid_pag(c.graph);
        const auto& ranked = res.trace.back().ranked;
        const std::string truth = hash_hex(graph_hash(gt.pag));
        for (const auto& e : ranked) {
            if (e.hash != truth) continue;
            row.recovered_equal_upper = e.score.upper == ranked.front().score.upper;
            row.recovered_overlap = e.score.upper >= ranked.front().score.lower;
        }
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::vector<BenchRow> run_benchmark(const Scenario& s, Execution ex) {
    const int tasks = s.replicates * static_cast<int>(s.n.size());
    std::vector<std::vector<BenchRow>> out(tasks);
    parallel_for(tasks, ex, [&](int t) {
        const int rep = t / static_cast<int>(s.n.size());
        const int ni = t % static_cast<int>(s.n.size());
        const std::uint64_t seed = split_seed(s.seed, static_cast<std::uint64_t>(rep));
        auto gt = random_ground_truth(s.p, s.density, s.bidirected, split_seed(seed, 0));
        auto spec = random_sem(gt, split_seed(seed, 1));
        const std::uint64_t data_seed = split_seed(seed, 100 + static_cast<std::uint64_t>(ni));
        Dataset data = s.data == "mixed" ? sample_mixed(gt, spec, default_mixed_kinds(s.p), s.n[ni], data_seed)
                                         : sample_gaussian(gt, spec, s.n[ni], data_seed);
        for (auto row : {run_fci(data, gt, s), run_dc(data, gt, s)}) {
            row.seed = seed;
            row.n = s.n[ni];
            out[t].push_back(std::move(row));
        }
    });
    std::vector<BenchRow> rows;
    for (auto& v : out)
        for (auto& r : v) rows.push_back(std::move(r));
    return rows;
}

std::string format_results(const std::vector<BenchRow>& rows, bool timing) {
    std::string o = "seed,n,algo,valid,recovered,shd,fdr,for,seconds\n";
    char buf[256];
    for (const auto& r : rows) {
        std::string secs = "NA";
        if (timing && r.ok) {
            std::snprintf(buf, sizeof buf, "%.6f", r.seconds);
            secs = buf;
        }
        if (r.ok)
            std::snprintf(buf, sizeof buf, "%llu,%d,%s,%d,%d,%d,%.6f,%.6f,", static_cast<unsigned long long>(r.seed),
                          r.n, r.algo.c_str(), r.valid, r.recovered, r.shd, r.fdr, r.for_rate);
        else
            std::snprintf(buf, sizeof buf, "%llu,%d,%s,0,0,NA,NA,NA,", static_cast<unsigned long long>(r.seed), r.n,
                          r.algo.c_str());
        o += buf + secs + "\n";
    }
    return o;
}

Quantiles summarize(std::vector<double> v) {
    Quantiles q;
    if (v.empty()) return q;
    std::sort(v.begin(), v.end());
    auto at = [&](double f) {
        double pos = f * (v.size() - 1);
        std::size_t lo = static_cast<std::size_t>(pos);
        std::size_t hi = std::min(lo + 1, v.size() - 1);
        return v[lo] + (pos - lo) * (v[hi] - v[lo]);
    };
    q.min = v.front();
    q.q1 = at(0.25);
    q.median = at(0.5);
    q.mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    q.q3 = at(0.75);
    q.max = v.back();
    return q;
}

std::string format_summary(const std::vector<BenchRow>& rows) {
    std::ostringstream o;
    char buf[256];
    std::vector<int> ns;
    for (const auto& r : rows)
        if (std::find(ns.begin(), ns.end(), r.n) == ns.end()) ns.push_back(r.n);
    for (int n : ns) {
        o << "n=" << n << "\n";
        for (const char* algo : {"fci", "dcfci"}) {
            std::vector<double> shds, fdrs, fors;
            int count = 0, failed = 0, valid = 0, rec = 0, rec_eq = 0, rec_ov = 0;
            for (const auto& r : rows) {
                if (r.n != n || r.algo != algo) continue;
                ++count;
                if (!r.ok) {
                    ++failed;
                    continue;
                }
                valid += r.valid;
                rec += r.recovered;
                rec_eq += r.recovered_equal_upper;
                rec_ov += r.recovered_overlap;
                shds.push_back(r.shd);
                fdrs.push_back(r.fdr);
                fors.push_back(r.for_rate);
            }
            auto pct = [&](int k) { return count ? 100.0 * k / count : 0.0; };
            std::snprintf(buf, sizeof buf, "  %-6s runs=%d failed=%d valid=%.1f%% recovered=%.1f%%", algo, count, failed,
                          pct(valid), pct(rec));
            o << buf;
            if (std::string(algo) == "dcfci") {
                std::snprintf(buf, sizeof buf, " (equal-upper %.1f%%, overlap %.1f%%)", pct(rec_eq), pct(rec_ov));
                o << buf;
            }
            o << "\n";
            for (auto [name, v] : {std::pair{"shd", &shds}, std::pair{"fdr", &fdrs}, std::pair{"for", &fors}}) {
                auto q = summarize(*v);
                std::snprintf(buf, sizeof buf, "    %-4s min=%.3f q1=%.3f median=%.3f mean=%.3f q3=%.3f max=%.3f\n", name,
                              q.min, q.q1, q.median, q.mean, q.q3, q.max);
                o << buf;
            }
        }
        std::vector<double> a, b;
        for (std::size_t i = 0; i + 1 < rows.size(); ++i)
            if (rows[i].n == n && rows[i].algo == "fci" && rows[i + 1].algo == "dcfci" && rows[i].ok && rows[i + 1].ok &&
                rows[i].seed == rows[i + 1].seed) {
                a.push_back(rows[i + 1].shd);
                b.push_back(rows[i].shd);
            }
        std::snprintf(buf, sizeof buf, "  sign test on shd (dcfci vs fci, %zu pairs): p=%.4f\n", a.size(), sign_test(a, b));
        o << buf;
    }
    return o.str();
}

}  // namespace dcfci
