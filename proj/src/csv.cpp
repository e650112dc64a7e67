#include "fuzzrank/csv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fuzzrank {

namespace {

// Splits the full file content into records, honoring quoted fields.
std::vector<std::vector<std::string>> parse_records(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> row;
    std::string cell;
    bool in_quotes = false;
    bool row_started = false;
    auto end_cell = [&] {
        row.push_back(std::move(cell));
        cell.clear();
    };
    auto end_row = [&] {
        end_cell();
        records.push_back(std::move(row));
        row.clear();
        row_started = false;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cell += c;
            }
            continue;
        }
        switch (c) {
            case '"': in_quotes = true; row_started = true; break;
            case ',': end_cell(); row_started = true; break;
            case '\r': break;
            case '\n':
                if (row_started || !cell.empty() || !row.empty()) end_row();
                break;
            default: cell += c; row_started = true; break;
        }
    }
    if (in_quotes) throw std::runtime_error("csv: unterminated quoted field");
    if (row_started || !cell.empty() || !row.empty()) end_row();
    return records;
}

}  // namespace

RawTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("csv: cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    auto records = parse_records(buf.str());
    if (records.empty()) throw std::runtime_error("csv: empty file: " + path);
    RawTable table;
    table.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header.size())
            throw std::runtime_error("csv: row " + std::to_string(r + 1) + " has " +
                                     std::to_string(records[r].size()) + " cells, expected " +
                                     std::to_string(table.header.size()) + ": " + path);
        table.rows.push_back(std::move(records[r]));
    }
    return table;
}

std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv(const std::string& path, const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("csv: cannot write file: " + path);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << csv_escape(row[i]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("csv: write failed: " + path);
}

}  // namespace fuzzrank
