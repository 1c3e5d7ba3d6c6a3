#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ift/analysis.hpp"

namespace ift {

/// Malformed delimiter-separated input; the message names the line.
class FormatError : public std::runtime_error {
public:
    FormatError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

/// Splits delimiter-separated text into records. The delimiter (',', ';' or
/// tab) is taken from the header line; double-quoted fields are supported.
/// Blank lines and lines starting with '#' are skipped.
struct DelimitedTable {
    std::vector<std::string> header;
    int header_line = 1;
    std::vector<std::vector<std::string>> records;
    std::vector<int> record_lines;
};

DelimitedTable read_delimited(std::istream& in);

/// Rows with header columns named after CaseAnalysisRow fields
/// (case_id, category, total_edges, ce_edges, ...). Published rows are taken
/// verbatim; no invariant is enforced here.
std::vector<CaseAnalysisRow> read_rows(std::istream& in);
void write_rows(std::ostream& out, std::span<const CaseAnalysisRow> rows);

ClaimTable read_claims(std::istream& in);

}  // namespace ift
