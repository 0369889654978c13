#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace usc {

enum class OutputFormat { Csv, Json };

/// Homogeneous numeric records with named columns.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row);
};

/// Fixed 12-significant-digit rendering shared by every output file.
std::string format_number(double value);

/// CSV (header row, '\n' line ends) or a JSON array of records. Throws
/// IoError when the path cannot be written.
void emit_table(const Table& table, const std::filesystem::path& path, OutputFormat format);

std::string render_table(const Table& table, OutputFormat format);

/// Reads a CSV written by emit_table.
Table read_csv(const std::filesystem::path& path);

}  // namespace usc
