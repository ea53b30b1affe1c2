#ifndef CSKIN_TABLE_HPP
#define CSKIN_TABLE_HPP

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "cskin/config.hpp"

namespace cskin {

using Cell = std::variant<double, long long, std::string>;

// Column-labelled table written as CSV ('.', ',' with 17 significant digits)
// or JSON. Every file starts with a provenance record of the resolved
// configuration; writes are atomic (temp file + rename).
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::vector<Cell> cells);
    const std::vector<std::string>& columns() const { return columns_; }
    size_t n_rows() const { return rows_.size(); }

    void write(const std::string& path, const std::map<std::string, std::string>& provenance,
               OutputFormat format) const;

    static std::string format_real(double v);
    static Cell real(double v) { return Cell(v); }
    static Cell integer(long long v) { return Cell(v); }
    static Cell text(std::string v) { return Cell(std::move(v)); }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

// path with the format-appropriate extension appended
std::string table_path(const std::string& dir, const std::string& stem, OutputFormat format);

} // namespace cskin

#endif
