#pragma once

#include <string>
#include <vector>

#include "dcfci/graph.hpp"

namespace dcfci {

// levels == 0 for continuous columns; binary columns have two levels.
struct VarKind {
    int levels = 0;
    bool continuous() const { return levels == 0; }
    static VarKind cont() { return {0}; }
    static VarKind binary() { return {2}; }
    static VarKind multinomial(int k) { return {k}; }
    bool operator==(const VarKind&) const = default;
};

std::string to_string(VarKind k);

struct Column {
    std::string name;
    VarKind kind;
    std::vector<double> values;  // level codes for categorical columns
};

class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<Column> columns);

    int rows() const { return rows_; }
    int cols() const { return static_cast<int>(columns_.size()); }
    const Column& column(int i) const { return columns_[i]; }
    const std::vector<Column>& columns() const { return columns_; }
    std::vector<std::string> names() const;
    std::vector<VarKind> kinds() const;

private:
    std::vector<Column> columns_;
    int rows_ = 0;
};

// `name=continuous|binary|multinomial:K`, one per line.
std::vector<std::pair<std::string, VarKind>> parse_schema(const std::string& text);
std::string format_schema(const Dataset& d);

Dataset parse_dataset(const std::string& csv, const std::string& schema);
Dataset read_dataset(const std::string& csv_path, const std::string& schema_path);
std::string format_csv(const Dataset& d);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace dcfci
