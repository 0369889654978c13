#include "usc/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "usc/error.hpp"

namespace usc {

void Table::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) throw ValidationError("table: record width does not match the header");
    rows.push_back(std::move(row));
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value == 0.0 ? 0.0 : value);  // no "-0"
    return buf;
}

std::string render_table(const Table& table, OutputFormat format) {
    std::ostringstream out;
    if (format == OutputFormat::Csv) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
            out << '\n';
        }
        return out.str();
    }

    auto records = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (std::isfinite(row[c])) rec[table.columns[c]] = std::strtod(format_number(row[c]).c_str(), nullptr);
            else rec[table.columns[c]] = nullptr;
        }
        records.push_back(std::move(rec));
    }
    out << records.dump(2) << '\n';
    return out.str();
}

void emit_table(const Table& table, const std::filesystem::path& path, OutputFormat format) {
    for (const auto& row : table.rows)
        if (row.size() != table.columns.size()) throw ValidationError("emit_table: inhomogeneous records");
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + path.string() + " for writing");
    file << render_table(table, format);
    if (!file) throw IoError("failed writing " + path.string());
}

Table read_csv(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path.string());
    Table table;
    std::string line;
    if (!std::getline(file, line)) return table;
    {
        std::stringstream header(line);
        std::string col;
        while (std::getline(header, col, ',')) table.columns.push_back(col);
    }
    while (std::getline(file, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        table.add_row(std::move(row));
    }
    return table;
}

}  // namespace usc
