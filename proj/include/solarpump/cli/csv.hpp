#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace solarpump::cli {

using CsvCell = std::variant<double, long long, std::string>;

// RFC 4180 dialect: comma separated, LF line ends, header always written,
// reals printed with 9 significant digits.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<CsvCell> row);
    const std::vector<std::string>& header() const { return header_; }
    size_t size() const { return rows_.size(); }

    std::string render() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<CsvCell>> rows_;
};

std::string format_real(double v);
std::string csv_escape(std::string_view field);

// Writes the table; failures raise io_error naming the path.
void emit_csv(const CsvTable& table, const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Minimal reader for files produced by CsvTable (quoted fields supported).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace solarpump::cli
