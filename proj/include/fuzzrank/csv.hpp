#pragma once

#include <string>
#include <vector>

namespace fuzzrank {

// A parsed CSV file: header row plus data rows, all cells as strings.
struct RawTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_cols() const { return header.size(); }
};

// Reads an RFC-4180 CSV file (UTF-8, quoted fields with "" escapes, LF or
// CRLF line endings). The first record is taken as the header. Throws
// std::runtime_error on a missing file or ragged rows.
RawTable read_csv(const std::string& path);

// Writes rows (header included as the first row) as RFC-4180 CSV with LF
// line endings, quoting only cells that need it.
void write_csv(const std::string& path, const std::vector<std::vector<std::string>>& rows);

std::string csv_escape(const std::string& cell);

}  // namespace fuzzrank
