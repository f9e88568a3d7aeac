#include "solarpump/cli/csv.hpp"

#include <fmt/format.h>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>

#include "solarpump/error.hpp"

namespace solarpump::cli {

std::string format_real(double v) { return fmt::format("{:.9g}", v); }

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void CsvTable::add_row(std::vector<CsvCell> row) {
    if (row.size() != header_.size())
        throw Error(ErrorKind::invalid_input,
                    fmt::format("CSV row has {} fields, header has {}", row.size(), header_.size()));
    rows_.push_back(std::move(row));
}

std::string CsvTable::render() const {
    std::string out;
    auto line = [&out](auto begin, auto end, auto&& cell) {
        for (auto it = begin; it != end; ++it) {
            if (it != begin) out += ',';
            out += cell(*it);
        }
        out += '\n';
    };
    line(header_.begin(), header_.end(), [](const std::string& h) { return csv_escape(h); });
    for (const auto& row : rows_) {
        line(row.begin(), row.end(), [](const CsvCell& c) {
            if (const auto* d = std::get_if<double>(&c)) return std::isnan(*d) ? std::string() : format_real(*d);
            if (const auto* i = std::get_if<long long>(&c)) return fmt::format("{}", *i);
            return csv_escape(std::get<std::string>(c));
        });
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io_error, fmt::format("cannot open '{}' for writing: {}", path, std::strerror(errno)));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw Error(ErrorKind::io_error, fmt::format("write to '{}' failed", path));
}

void emit_csv(const CsvTable& table, const std::string& path) { write_text_file(path, table.render()); }

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        any = true;
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            any = false;
        } else if (c != '\r') {
            field += c;
        }
    }
    if (any) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace solarpump::cli
