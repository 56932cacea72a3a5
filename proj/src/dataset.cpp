#include "dcfci/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace dcfci {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(line);
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

std::string to_string(VarKind k) {
    if (k.continuous()) return "continuous";
    if (k.levels == 2) return "binary";
    return "multinomial:" + std::to_string(k.levels);
}

Dataset::Dataset(std::vector<Column> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) return;
    rows_ = static_cast<int>(columns_[0].values.size());
    for (const auto& c : columns_) {
        if (static_cast<int>(c.values.size()) != rows_) throw InputError("column " + c.name + " has a different length");
        if (!c.kind.continuous()) {
            if (c.kind.levels < 2) throw InputError("column " + c.name + " needs at least two levels");
            for (double v : c.values)
                if (v != std::floor(v) || v < 0 || v >= c.kind.levels)
                    throw InputError("column " + c.name + ": level out of range");
        } else {
            for (double v : c.values)
                if (!std::isfinite(v)) throw InputError("column " + c.name + ": non-finite value");
        }
    }
}

std::vector<std::string> Dataset::names() const {
    std::vector<std::string> out;
    for (const auto& c : columns_) out.push_back(c.name);
    return out;
}

std::vector<VarKind> Dataset::kinds() const {
    std::vector<VarKind> out;
    for (const auto& c : columns_) out.push_back(c.kind);
    return out;
}

std::vector<std::pair<std::string, VarKind>> parse_schema(const std::string& text) {
    std::vector<std::pair<std::string, VarKind>> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw InputError("schema line " + std::to_string(lineno) + ": expected name=kind");
        std::string name = trim(line.substr(0, eq)), kind = trim(line.substr(eq + 1));
        VarKind k;
        if (kind == "continuous") {
            k = VarKind::cont();
        } else if (kind == "binary") {
            k = VarKind::binary();
        } else if (kind.rfind("multinomial:", 0) == 0) {
            int levels = 0;
            auto s = kind.substr(12);
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), levels);
            if (ec != std::errc() || ptr != s.data() + s.size() || levels < 2)
                throw InputError("schema line " + std::to_string(lineno) + ": bad level count");
            k = VarKind::multinomial(levels);
        } else {
            throw InputError("schema line " + std::to_string(lineno) + ": unknown kind '" + kind + "'");
        }
        out.emplace_back(name, k);
    }
    return out;
}

std::string format_schema(const Dataset& d) {
    std::string out;
    for (const auto& c : d.columns()) out += c.name + "=" + to_string(c.kind) + "\n";
    return out;
}

Dataset parse_dataset(const std::string& csv, const std::string& schema_text) {
    auto schema = parse_schema(schema_text);
    std::map<std::string, VarKind> kinds(schema.begin(), schema.end());
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw InputError("data: empty file");
    auto header = split(trim(line), ',');
    std::vector<Column> cols;
    for (auto& h : header) {
        auto it = kinds.find(h);
        if (it == kinds.end()) throw InputError("data: column '" + h + "' missing from schema");
        cols.push_back({h, it->second, {}});
    }
    if (kinds.size() != header.size()) throw InputError("data: schema lists columns not present in the header");
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        auto cells = split(line, ',');
        if (cells.size() != cols.size())
            throw InputError("data line " + std::to_string(lineno) + ": expected " + std::to_string(cols.size()) +
                             " fields");
        for (std::size_t j = 0; j < cells.size(); ++j) {
            double v = 0;
            const auto& s = cells[j];
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
                throw InputError("data line " + std::to_string(lineno) + ": bad value '" + s + "'");
            cols[j].values.push_back(v);
        }
    }
    try {
        return Dataset(std::move(cols));
    } catch (const InputError& e) {
        throw InputError(std::string("data: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path);
    f << text;
}

Dataset read_dataset(const std::string& csv_path, const std::string& schema_path) {
    return parse_dataset(read_file(csv_path), read_file(schema_path));
}

std::string format_csv(const Dataset& d) {
    std::string out;
    for (int j = 0; j < d.cols(); ++j) {
        if (j) out += ',';
        out += d.column(j).name;
    }
    out += '\n';
    char buf[32];
    for (int i = 0; i < d.rows(); ++i) {
        for (int j = 0; j < d.cols(); ++j) {
            if (j) out += ',';
            const auto& c = d.column(j);
            if (c.kind.continuous())
                std::snprintf(buf, sizeof buf, "%.10g", c.values[i]);
            else
                std::snprintf(buf, sizeof buf, "%d", static_cast<int>(c.values[i]));
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace dcfci
