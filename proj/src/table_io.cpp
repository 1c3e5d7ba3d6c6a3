#include "ift/table_io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

namespace ift {

FormatError::FormatError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line, char delim, int lineno) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == delim) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw FormatError(lineno, "unterminated quoted field");
    out.push_back(trim(cur));
    return out;
}

int to_int(const std::string& s, int lineno, const std::string& column) {
    int value = 0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc() || p != end || value < 0) {
        throw FormatError(lineno, "column '" + column + "' expects a non-negative integer, got '" + s + "'");
    }
    return value;
}

std::optional<Category> lenient_category(std::string s) {
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    return parse_category(s);
}

}  // namespace

DelimitedTable read_delimited(std::istream& in) {
    DelimitedTable t;
    std::string line;
    int lineno = 0;
    char delim = ',';
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        if (!have_header) {
            if (trimmed.find('\t') != std::string::npos) delim = '\t';
            else if (trimmed.find(',') == std::string::npos && trimmed.find(';') != std::string::npos) delim = ';';
            t.header = split(trimmed, delim, lineno);
            t.header_line = lineno;
            have_header = true;
            continue;
        }
        auto fields = split(trimmed, delim, lineno);
        if (fields.size() != t.header.size()) {
            throw FormatError(lineno, "expected " + std::to_string(t.header.size()) + " fields, found " +
                                          std::to_string(fields.size()));
        }
        t.records.push_back(std::move(fields));
        t.record_lines.push_back(lineno);
    }
    if (!have_header) throw FormatError(lineno, "missing header row");
    return t;
}

std::vector<CaseAnalysisRow> read_rows(std::istream& in) {
    const auto table = read_delimited(in);
    const auto& h = table.header;
    auto col = [&](std::string_view name) -> std::optional<std::size_t> {
        auto it = std::find(h.begin(), h.end(), name);
        if (it == h.end()) return std::nullopt;
        return static_cast<std::size_t>(it - h.begin());
    };
    const auto id_col = col("case_id");
    if (!id_col) throw FormatError(table.header_line, "header lacks 'case_id'");
    for (const auto& f : kRowCountFields) {
        if (!col(f)) throw FormatError(table.header_line, "header lacks '" + std::string(f) + "'");
    }
    const auto cat_col = col("category");

    std::vector<CaseAnalysisRow> rows;
    for (std::size_t r = 0; r < table.records.size(); ++r) {
        const auto& rec = table.records[r];
        const int lineno = table.record_lines[r];
        CaseAnalysisRow row;
        row.case_id = rec[*id_col];
        if (cat_col) {
            auto cat = lenient_category(rec[*cat_col]);
            if (!cat) throw FormatError(lineno, "unknown category '" + rec[*cat_col] + "'");
            row.category = *cat;
        }
        for (const auto& f : kRowCountFields) {
            set_row_field(row, f, to_int(rec[*col(f)], lineno, std::string(f)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_rows(std::ostream& out, std::span<const CaseAnalysisRow> rows) {
    out << "case_id,category";
    for (const auto& f : kRowCountFields) out << ',' << f;
    out << '\n';
    for (const auto& r : rows) {
        if (r.case_id.find_first_of(",\"") != std::string::npos) {
            out << '"';
            for (char c : r.case_id) out << (c == '"' ? "\"\"" : std::string(1, c));
            out << '"';
        } else {
            out << r.case_id;
        }
        out << ',' << to_string(r.category);
        for (const auto& f : kRowCountFields) out << ',' << *row_field(r, f);
        out << '\n';
    }
}

ClaimTable read_claims(std::istream& in) {
    const auto table = read_delimited(in);
    const auto& h = table.header;
    auto id = std::find(h.begin(), h.end(), "case_id");
    if (id == h.end()) throw FormatError(table.header_line, "header lacks 'case_id'");
    const auto id_col = static_cast<std::size_t>(id - h.begin());
    for (std::size_t c = 0; c < h.size(); ++c) {
        if (c == id_col) continue;
        const bool known = row_field(CaseAnalysisRow{}, h[c]).has_value() ||
                           std::find(kAggregateClaimFields.begin(), kAggregateClaimFields.end(), h[c]) !=
                               kAggregateClaimFields.end();
        if (!known && h[c] != "category") throw FormatError(table.header_line, "unknown claim column '" + h[c] + "'");
    }

    ClaimTable claims;
    for (std::size_t r = 0; r < table.records.size(); ++r) {
        const auto& rec = table.records[r];
        ClaimTable::Row row;
        row.case_id = rec[id_col];
        for (std::size_t c = 0; c < h.size(); ++c) {
            if (c == id_col || h[c] == "category" || rec[c].empty()) continue;
            row.values[h[c]] = to_int(rec[c], table.record_lines[r], h[c]);
        }
        claims.rows.push_back(std::move(row));
    }
    return claims;
}

}  // namespace ift
