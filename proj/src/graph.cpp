#include "dcfci/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <sstream>

namespace dcfci {

Mask to_mask(const VarSet& s) {
    Mask m = 0;
    for (int v : s) m |= bit(v);
    return m;
}

VarSet from_mask(Mask m) {
    VarSet s;
    while (m) {
        int v = std::countr_zero(m);
        s.push_back(v);
        m &= m - 1;
    }
    return s;
}

MixedGraph::MixedGraph(int p) {
    if (p < 0 || p > kMaxVertices) throw GraphError("vertex count out of range");
    std::vector<std::string> names;
    for (int i = 0; i < p; ++i) names.push_back("V" + std::to_string(i + 1));
    *this = MixedGraph(std::move(names));
}

MixedGraph::MixedGraph(std::vector<std::string> names) : p_(static_cast<int>(names.size())), names_(std::move(names)) {
    if (p_ > kMaxVertices) throw GraphError("vertex count out of range");
    for (int i = 0; i < p_; ++i) {
        if (names_[i].empty()) throw GraphError("empty vertex name");
        for (int j = 0; j < i; ++j)
            if (names_[i] == names_[j]) throw GraphError("duplicate vertex name: " + names_[i]);
    }
    marks_.assign(static_cast<std::size_t>(p_) * p_, 0);
    adj_.assign(p_, 0);
}

MixedGraph MixedGraph::complete(std::vector<std::string> names) {
    MixedGraph g(std::move(names));
    for (int a = 0; a < g.p_; ++a)
        for (int b = a + 1; b < g.p_; ++b) g.set_edge(a, b, Mark::Circle, Mark::Circle);
    return g;
}

void MixedGraph::check_vertex(int v) const {
    if (v < 0 || v >= p_) throw GraphError("vertex index out of range: " + std::to_string(v));
}

int MixedGraph::index_of(std::string_view name) const {
    for (int i = 0; i < p_; ++i)
        if (names_[i] == name) return i;
    throw GraphError("unknown vertex: " + std::string(name));
}

Mark MixedGraph::mark(int from, int at) const {
    auto m = marks_[from * p_ + at];
    if (m == 0) throw GraphError("no edge between " + names_[from] + " and " + names_[at]);
    return static_cast<Mark>(m);
}

std::vector<int> MixedGraph::neighbor_list(int v) const { return from_mask(adj_[v]); }

int MixedGraph::edge_count() const {
    int n = 0;
    for (Mask m : adj_) n += std::popcount(m);
    return n / 2;
}

void MixedGraph::set_edge(int a, int b, Mark at_a, Mark at_b) {
    check_vertex(a);
    check_vertex(b);
    if (a == b) throw GraphError("self loop on " + names_[a]);
    marks_[b * p_ + a] = static_cast<std::uint8_t>(at_a);
    marks_[a * p_ + b] = static_cast<std::uint8_t>(at_b);
    adj_[a] |= bit(b);
    adj_[b] |= bit(a);
}

void MixedGraph::set_mark(int from, int at, Mark m) {
    if (!adjacent(from, at)) throw GraphError("no edge between " + names_[from] + " and " + names_[at]);
    marks_[from * p_ + at] = static_cast<std::uint8_t>(m);
}

void MixedGraph::remove_edge(int a, int b) {
    marks_[a * p_ + b] = 0;
    marks_[b * p_ + a] = 0;
    adj_[a] &= ~bit(b);
    adj_[b] &= ~bit(a);
}

void MixedGraph::reset_marks(Mark m) {
    for (auto& x : marks_)
        if (x != 0) x = static_cast<std::uint8_t>(m);
}

bool MixedGraph::directed(int a, int b) const {
    return adjacent(a, b) && mark(a, b) == Mark::Arrowhead && mark(b, a) == Mark::Tail;
}

bool MixedGraph::bidirected(int a, int b) const {
    return adjacent(a, b) && mark(a, b) == Mark::Arrowhead && mark(b, a) == Mark::Arrowhead;
}

bool MixedGraph::has_circles() const {
    return std::any_of(marks_.begin(), marks_.end(), [](std::uint8_t m) { return m == static_cast<std::uint8_t>(Mark::Circle); });
}

Mask MixedGraph::parents(int v) const {
    Mask out = 0;
    for (Mask m = adj_[v]; m; m &= m - 1) {
        int u = std::countr_zero(m);
        if (directed(u, v)) out |= bit(u);
    }
    return out;
}

Mask MixedGraph::children(int v) const {
    Mask out = 0;
    for (Mask m = adj_[v]; m; m &= m - 1) {
        int u = std::countr_zero(m);
        if (directed(v, u)) out |= bit(u);
    }
    return out;
}

bool conforms(const MixedGraph& g, GraphClass cls) {
    for (int a = 0; a < g.size(); ++a) {
        for (int b = a + 1; b < g.size(); ++b) {
            if (!g.adjacent(a, b)) continue;
            Mark ma = g.mark(b, a), mb = g.mark(a, b);
            bool dir = (ma == Mark::Tail && mb == Mark::Arrowhead) || (ma == Mark::Arrowhead && mb == Mark::Tail);
            bool bi = ma == Mark::Arrowhead && mb == Mark::Arrowhead;
            if (cls == GraphClass::Pag) {
                // no selection bias: tails only on directed edges
                if (ma == Mark::Tail && mb != Mark::Arrowhead) return false;
                if (mb == Mark::Tail && ma != Mark::Arrowhead) return false;
            } else if (!dir && !bi) {
                return false;
            }
        }
    }
    return true;
}

namespace {

char near_char(Mark m) {
    switch (m) {
        case Mark::Circle: return 'o';
        case Mark::Tail: return '-';
        case Mark::Arrowhead: return '<';
    }
    return '?';
}

char far_char(Mark m) {
    switch (m) {
        case Mark::Circle: return 'o';
        case Mark::Tail: return '-';
        case Mark::Arrowhead: return '>';
    }
    return '?';
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string serialize(const MixedGraph& g) {
    std::string out = "# vars: ";
    for (int i = 0; i < g.size(); ++i) {
        if (i) out += ',';
        out += g.name(i);
    }
    out += '\n';
    for (int a = 0; a < g.size(); ++a) {
        for (int b = a + 1; b < g.size(); ++b) {
            if (!g.adjacent(a, b)) continue;
            out += g.name(a);
            out += ' ';
            out += near_char(g.mark(b, a));
            out += '-';
            out += far_char(g.mark(a, b));
            out += ' ';
            out += g.name(b);
            out += '\n';
        }
    }
    return out;
}

MixedGraph parse_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    bool have_header = false;
    MixedGraph g;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            auto pos = t.find("vars:");
            if (pos == std::string::npos) continue;
            if (have_header) throw InputError("line " + std::to_string(lineno) + ": duplicate vars header");
            std::vector<std::string> names;
            std::stringstream ss(t.substr(pos + 5));
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                if (!item.empty()) names.push_back(item);
            }
            try {
                g = MixedGraph(std::move(names));
            } catch (const GraphError& e) {
                throw InputError("line " + std::to_string(lineno) + ": " + e.what());
            }
            have_header = true;
            continue;
        }
        if (!have_header) throw InputError("line " + std::to_string(lineno) + ": edge before '# vars:' header");
        std::istringstream ls(t);
        std::string a, tok, b, extra;
        if (!(ls >> a >> tok >> b) || (ls >> extra) || tok.size() != 3 || tok[1] != '-')
            throw InputError("line " + std::to_string(lineno) + ": malformed edge '" + t + "'");
        Mark ma, mb;
        switch (tok[0]) {
            case 'o': ma = Mark::Circle; break;
            case '-': ma = Mark::Tail; break;
            case '<': ma = Mark::Arrowhead; break;
            default: throw InputError("line " + std::to_string(lineno) + ": bad mark '" + tok + "'");
        }
        switch (tok[2]) {
            case 'o': mb = Mark::Circle; break;
            case '-': mb = Mark::Tail; break;
            case '>': mb = Mark::Arrowhead; break;
            default: throw InputError("line " + std::to_string(lineno) + ": bad mark '" + tok + "'");
        }
        int ia, ib;
        try {
            ia = g.index_of(a);
            ib = g.index_of(b);
        } catch (const GraphError& e) {
            throw InputError("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (ia == ib) throw InputError("line " + std::to_string(lineno) + ": self loop");
        if (g.adjacent(ia, ib)) throw InputError("line " + std::to_string(lineno) + ": duplicate edge " + a + " " + b);
        g.set_edge(ia, ib, ma, mb);
    }
    if (!have_header) throw InputError("missing '# vars:' header");
    return g;
}

std::uint64_t graph_hash(const MixedGraph& g) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : serialize(g)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_set(const MixedGraph& g, const VarSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += g.name(s[i]);
    }
    return out + "}";
}

void SepSetMap::add(int x, int y, VarSet s) {
    std::sort(s.begin(), s.end());
    auto& v = map_[ordered(x, y)];
    if (std::find(v.begin(), v.end(), s) == v.end()) {
        v.push_back(std::move(s));
        std::sort(v.begin(), v.end());
    }
}

bool SepSetMap::has(int x, int y) const { return map_.count(ordered(x, y)) != 0; }

const std::vector<VarSet>& SepSetMap::get(int x, int y) const {
    auto it = map_.find(ordered(x, y));
    if (it == map_.end()) throw GraphError("no separating set recorded for pair");
    return it->second;
}

bool SepSetMap::in_any(int x, int y, int v) const {
    auto it = map_.find(ordered(x, y));
    if (it == map_.end()) return false;
    for (const auto& s : it->second)
        if (std::binary_search(s.begin(), s.end(), v)) return true;
    return false;
}

}  // namespace dcfci
