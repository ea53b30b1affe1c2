#include "cskin/table.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "cskin/errors.hpp"

namespace fs = std::filesystem;

namespace cskin {

std::string Table::format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void Table::add_row(std::vector<Cell> cells) {
    if (cells.size() != columns_.size())
        throw DimensionMismatch("Table::add_row: cell count != column count");
    rows_.push_back(std::move(cells));
}

namespace {

std::string cell_to_csv(const Cell& c) {
    if (std::holds_alternative<double>(c)) return Table::format_real(std::get<double>(c));
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

nlohmann::json cell_to_json(const Cell& c) {
    if (std::holds_alternative<double>(c)) return std::get<double>(c);
    if (std::holds_alternative<long long>(c)) return std::get<long long>(c);
    return std::get<std::string>(c);
}

} // namespace

void Table::write(const std::string& path, const std::map<std::string, std::string>& provenance,
                  OutputFormat format) const {
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("cannot open output file '" + tmp.string() + "'");
        if (format == OutputFormat::Csv) {
            out << "# resolved-config:";
            for (const auto& [k, v] : provenance) out << " " << k << "=" << v << ";";
            out << "\n";
            for (size_t i = 0; i < columns_.size(); ++i)
                out << (i ? "," : "") << columns_[i];
            out << "\n";
            for (const auto& row : rows_) {
                for (size_t i = 0; i < row.size(); ++i)
                    out << (i ? "," : "") << cell_to_csv(row[i]);
                out << "\n";
            }
        } else {
            nlohmann::json j;
            j["provenance"] = provenance;
            j["columns"] = columns_;
            auto& rows = j["rows"] = nlohmann::json::array();
            for (const auto& row : rows_) {
                nlohmann::json jr = nlohmann::json::array();
                for (const auto& c : row) jr.push_back(cell_to_json(c));
                rows.push_back(std::move(jr));
            }
            out << j.dump(1) << "\n";
        }
        if (!out) throw Error("failed writing '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

std::string table_path(const std::string& dir, const std::string& stem, OutputFormat format) {
    return (fs::path(dir) / (stem + (format == OutputFormat::Json ? ".json" : ".csv"))).string();
}

} // namespace cskin
