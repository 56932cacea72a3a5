// dcfci command line: discover, score, simulate, benchmark.
// Exit codes: 0 ok, 2 bad input, 3 engine failure.

#include <CLI11.hpp>
#include <omp.h>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>

#include "dcfci/benchmark.hpp"
#include "dcfci/dataset.hpp"
#include "dcfci/evidence.hpp"
#include "dcfci/pag_mag.hpp"
#include "dcfci/scoring.hpp"
#include "dcfci/search.hpp"
#include "dcfci/simulate.hpp"

namespace fs = std::filesystem;
using namespace dcfci;

namespace {

struct Inputs {
    std::string data, schema, citable;
};

struct Loaded {
    std::unique_ptr<Dataset> data;  // DataEvidence keeps a reference; must outlive ev
    std::unique_ptr<Evidence> ev;
    std::vector<std::string> names;
    std::string source;
};

// The CI table names its variables in a `# vars: a,b,...` line.
std::vector<std::string> table_vars(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto pos = line.find("# vars:");
        if (pos == std::string::npos) continue;
        std::vector<std::string> names;
        std::stringstream ss(line.substr(pos + 7));
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto b = item.find_first_not_of(" \t\r"), e = item.find_last_not_of(" \t\r");
            if (b != std::string::npos) names.push_back(item.substr(b, e - b + 1));
        }
        return names;
    }
    throw InputError("CI table has no '# vars:' line");
}

Loaded load_evidence(const Inputs& in) {
    Loaded out;
    if (!in.citable.empty()) {
        if (!in.data.empty()) throw InputError("give either --data or --citable, not both");
        auto text = read_file(in.citable);
        out.names = table_vars(text);
        out.ev = parse_ci_table(text, out.names);
        out.source = "citable=" + in.citable;
        return out;
    }
    if (in.data.empty() || in.schema.empty()) throw InputError("--data and --schema are required (or --citable)");
    out.data = std::make_unique<Dataset>(read_dataset(in.data, in.schema));
    out.names = out.data->names();
    out.ev = std::make_unique<DataEvidence>(*out.data);
    out.source = "data=" + in.data + "\nschema=" + in.schema;
    return out;
}

void add_inputs(CLI::App* cmd, Inputs& in) {
    cmd->add_option("--data", in.data, "CSV data file");
    cmd->add_option("--schema", in.schema, "schema file (name=continuous|binary|multinomial:K)");
    cmd->add_option("--citable", in.citable, "precomputed CI table instead of data");
}

void set_threads(int t) {
    if (t < 1) throw InputError("--threads must be positive");
    omp_set_num_threads(t);
}

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

MixedGraph load_pag(const std::string& path) {
    auto g = parse_graph(read_file(path));
    auto check = check_pag(g);
    if (!check.valid) throw InputError(path + ": not a valid PAG (failed stage: " + check.failed_stage + ")");
    return g;
}

void align(const MixedGraph& g, const std::vector<std::string>& names, const std::string& path) {
    if (g.names() != names) throw InputError(path + ": variables do not match the evidence");
}

int discover(const Inputs& in, DcfciConfig cfg, const std::string& out_dir) {
    auto l = load_evidence(in);
    cfg.exec = Execution::Parallel;
    validate(cfg, static_cast<int>(l.names.size()));
    auto res = run_dcfci(*l.ev, l.names, cfg);

    fs::create_directories(out_dir);
    std::ostringstream scores, manifest;
    scores << "rank hash lower upper diff_size\n";
    for (std::size_t i = 0; i < res.candidates.size(); ++i) {
        const auto& c = res.candidates[i];
        write_file((fs::path(out_dir) / ("pag_" + std::to_string(i + 1) + ".txt")).string(), serialize(c.graph));
        scores << i + 1 << ' ' << hash_hex(graph_hash(c.graph)) << ' ' << fmt3(c.score.lower) << ' '
               << fmt3(c.score.upper) << ' ' << c.difference_size << '\n';
    }
    write_file((fs::path(out_dir) / "scores.txt").string(), scores.str());

    manifest << l.source << "\nalpha=" << cfg.alpha << "\nk=" << cfg.k << "\nrmax=" << cfg.r_max
             << "\nties=" << to_string(cfg.ties) << "\ncandidates=" << res.candidates.size() << '\n';
    for (const auto& t : res.trace) {
        manifest << "iteration r=" << t.r << " potential=" << t.potential << " pool=" << t.pool
                 << " dropped=" << t.dropped << " retained=" << t.retained << '\n';
        for (const auto& e : t.ranked)
            manifest << "  " << e.hash << ' ' << fmt3(e.score.lower) << ' ' << fmt3(e.score.upper) << ' '
                     << e.difference_size << '\n';
    }
    for (const auto& w : res.warnings) manifest << "warning " << w << '\n';
    write_file((fs::path(out_dir) / "manifest.txt").string(), manifest.str());

    std::cout << scores.str();
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
    return 0;
}

int score(const Inputs& in, const std::string& graph, const std::vector<std::string>& against, int r_max) {
    auto l = load_evidence(in);
    auto g = load_pag(graph);
    align(g, l.names, graph);
    if (against.empty()) {
        auto b = straightforward_score(g, *l.ev);
        std::cout << fmt3(b.lower) << ' ' << fmt3(b.upper) << '\n';
        return 0;
    }
    std::vector<MixedGraph> cands{g};
    for (const auto& a : against) {
        cands.push_back(load_pag(a));
        align(cands.back(), l.names, a);
    }
    int r = r_max < 0 ? std::max(0, static_cast<int>(l.names.size()) - 2) : r_max;
    auto scores = comparable_scores(cands, r, *l.ev, Execution::Parallel);
    for (std::size_t i = 0; i < cands.size(); ++i)
        std::cout << hash_hex(graph_hash(cands[i])) << ' ' << fmt3(scores[i].bounds.lower) << ' '
                  << fmt3(scores[i].bounds.upper) << ' ' << scores[i].difference_size << '\n';
    return 0;
}

// Ground truth from a user ADMG: the causal order is any topological order.
GroundTruth truth_from_admg(const MixedGraph& admg, std::uint64_t seed) {
    if (!conforms(admg, GraphClass::Admg)) throw InputError("--graph must be an acyclic directed mixed graph");
    const int p = admg.size();
    auto parent = [&](int a, int b) {
        return a != b && admg.adjacent(a, b) && admg.mark(a, b) == Mark::Arrowhead && admg.mark(b, a) == Mark::Tail;
    };
    std::vector<int> indeg(p, 0), order;
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            if (parent(a, b)) ++indeg[b];
    while (static_cast<int>(order.size()) < p) {
        int next = -1;
        for (int v = 0; v < p && next < 0; ++v)
            if (indeg[v] == 0) next = v;
        if (next < 0) throw InputError("--graph has a directed cycle");
        indeg[next] = -1;
        order.push_back(next);
        for (int b = 0; b < p; ++b)
            if (parent(next, b)) --indeg[b];
    }
    GroundTruth gt{admg, admg_to_mag(admg), MixedGraph(admg.names()), seed, order};
    gt.pag = mag_to_pag(gt.mag);
    return gt;
}

struct SimArgs {
    int p = 5, n = 1000;
    double density = 0.5, bidirected = 0.3;
    std::string data = "gaussian", graph;
};

int simulate(const SimArgs& a, std::uint64_t seed, const std::string& out_dir) {
    if (a.n < 1) throw InputError("--n must be positive");
    if (a.data != "gaussian" && a.data != "mixed") throw InputError("--type must be gaussian or mixed");
    GroundTruth gt = a.graph.empty() ? random_ground_truth(a.p, a.density, a.bidirected, split_seed(seed, 0))
                                     : truth_from_admg(parse_graph(read_file(a.graph)), seed);
    auto spec = random_sem(gt, split_seed(seed, 1));
    auto d = a.data == "gaussian"
                 ? sample_gaussian(gt, spec, a.n, split_seed(seed, 2))
                 : sample_mixed(gt, spec, default_mixed_kinds(gt.admg.size()), a.n, split_seed(seed, 2));
    fs::create_directories(out_dir);
    auto path = [&](const char* f) { return (fs::path(out_dir) / f).string(); };
    write_file(path("data.csv"), format_csv(d));
    write_file(path("schema.txt"), format_schema(d));
    write_file(path("truth_admg.txt"), serialize(gt.admg));
    write_file(path("truth_mag.txt"), serialize(gt.mag));
    write_file(path("truth_pag.txt"), serialize(gt.pag));
    return 0;
}

int benchmark(const std::string& scenario, bool timing, const std::string& out, const std::string& summary) {
    Scenario s = scenario.empty() ? Scenario{} : parse_scenario(read_file(scenario));
    auto rows = run_benchmark(s, Execution::Parallel);
    auto csv = format_results(rows, timing);
    if (out.empty())
        std::cout << csv;
    else
        write_file(out, csv);
    auto text = format_summary(rows);
    if (summary.empty())
        std::cerr << text;
    else
        write_file(summary, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dcfci: causal discovery with data-compatibility scores"};
    app.require_subcommand(1);

    Inputs in;
    DcfciConfig cfg;
    std::string ties = "strict", out, graph, scenario, summary;
    std::vector<std::string> against;
    std::uint64_t seed = 1;
    int threads = 1;
    bool no_timing = false;
    SimArgs sim;

    auto common = [&](CLI::App* c) {
        c->add_option("--threads", threads, "OpenMP threads")->check(CLI::PositiveNumber);
        c->add_option("--seed", seed, "base seed");
    };

    auto* disc = app.add_subcommand("discover", "run dcFCI and write ranked PAGs");
    add_inputs(disc, in);
    disc->add_option("--alpha", cfg.alpha, "significance level for candidate separators");
    disc->add_option("--k", cfg.k, "number of PAGs to keep");
    disc->add_option("--rmax", cfg.r_max, "largest conditioning set (default p-2)");
    disc->add_option("--ties", ties, "strict|equal-upper|overlap");
    disc->add_option("--out", out, "output directory")->required();
    common(disc);

    auto* sc = app.add_subcommand("score", "score a PAG against data");
    add_inputs(sc, in);
    sc->add_option("--graph", graph, "PAG file")->required();
    sc->add_option("--against", against, "competing PAG files (comparable scores)");
    sc->add_option("--rmax", cfg.r_max, "largest conditioning set (default p-2)");
    common(sc);

    auto* si = app.add_subcommand("simulate", "draw a ground truth and a dataset");
    si->add_option("--p", sim.p, "number of variables");
    si->add_option("--n", sim.n, "sample size");
    si->add_option("--density", sim.density, "edge probability");
    si->add_option("--bidirected", sim.bidirected, "share of bidirected edges");
    si->add_option("--type", sim.data, "gaussian|mixed");
    si->add_option("--graph", sim.graph, "sample from this ADMG instead of a random one");
    si->add_option("--out", out, "output directory")->required();
    common(si);

    auto* be = app.add_subcommand("benchmark", "fci vs dcfci on simulated data");
    be->add_option("--scenario", scenario, "key=value scenario file");
    be->add_option("--out", out, "results CSV (default stdout)");
    be->add_option("--summary", summary, "summary file (default stderr)");
    be->add_flag("--no-timing", no_timing, "write NA for seconds (byte-stable output)");
    common(be);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        set_threads(threads);
        cfg.ties = parse_tie_mode(ties);
        if (*disc) return discover(in, cfg, out);
        if (*sc) return score(in, graph, against, cfg.r_max);
        if (*si) return simulate(sim, seed, out);
        if (*be) return benchmark(scenario, !no_timing, out, summary);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const GraphError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "engine error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
