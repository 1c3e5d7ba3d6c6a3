#include "ift/report.hpp"

#include <iomanip>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "ift/table_io.hpp"

namespace ift {

ReportBundle build_report(std::span<const ValidTree> trees, std::span<const CaseAnalysisRow> extra_rows,
                          const ClaimTable* claims) {
    ReportBundle b;
    for (const auto& t : trees) b.rows.push_back(case_row(t));
    b.rows.insert(b.rows.end(), extra_rows.begin(), extra_rows.end());
    b.summary = aggregate_corpus(b.rows, claims);
    b.tree_count = static_cast<int>(trees.size());
    b.frequency = control_frequency(trees);
    b.patterns = ransomware_patterns(trees);
    return b;
}

std::optional<ReportFormat> parse_report_format(std::string_view text) {
    if (text == "csv") return ReportFormat::Csv;
    if (text == "json") return ReportFormat::Json;
    if (text == "table") return ReportFormat::Table;
    return std::nullopt;
}

namespace {

struct SummaryLine {
    std::string_view name;
    int total;
    int ce, ac, mixed;
    std::optional<int> unclassifiable;
};

std::vector<SummaryLine> summary_lines(const CorpusSummary& s) {
    return {
        {"edge", s.total_edges, s.edges.ce, s.edges.ac, s.edges.mixed, std::nullopt},
        {"level", s.total_l1, s.l1.ce, s.l1.ac, s.l1.mixed, std::nullopt},
        {"phase", s.phase.cases, s.phase.ce, s.phase.ac, s.phase.mixed, s.phase.unclassifiable},
        {"level_phase", s.level_phase.cases, s.level_phase.ce, s.level_phase.ac, s.level_phase.mixed,
         s.level_phase.unclassifiable},
    };
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string opt(const std::optional<long>& v) { return v ? std::to_string(*v) : std::string(); }

template <typename F>
void for_each_pattern_entry(const ReportBundle& b, F&& f) {
    for (const auto& p : b.patterns) {
        for (const auto& u : p.top_ce) f(p, "CE", qualified_name(u.control), u.incidents, u.l1);
        for (const auto& u : p.top_ac) f(p, "AC", qualified_name(u.control), u.incidents, u.l1);
        for (const auto& u : p.top_mixed) {
            f(p, "CE+AC", qualified_name(u.ce) + "+" + qualified_name(u.ac), u.incidents, u.l1);
        }
    }
}

void render_csv(std::ostream& out, const ReportBundle& b) {
    out << "# rows\n";
    write_rows(out, b.rows);
    out << "\n# summary\nanalysis,total,ce,ac,mixed,unclassifiable\n";
    for (const auto& l : summary_lines(b.summary)) {
        out << l.name << ',' << l.total << ',' << l.ce << ',' << l.ac << ',' << l.mixed << ','
            << (l.unclassifiable ? std::to_string(*l.unclassifiable) : "") << '\n';
    }
    out << "\n# control_frequency\ncontrol,incidents,of\n";
    for (auto name : kAllControlNames) {
        out << qualified_name(Control::of(name)) << ',' << b.frequency[static_cast<std::size_t>(name)] << ','
            << b.tree_count << '\n';
    }
    out << "\n# ransomware_patterns\nvariant,cases,class,controls,incidents,l1\n";
    for_each_pattern_entry(b, [&](const VariantPattern& p, std::string_view cls, const std::string& what,
                                  int incidents, bool l1) {
        out << csv_field(p.variant) << ',' << p.cases << ',' << cls << ',' << what << ',' << incidents << ','
            << (l1 ? 1 : 0) << '\n';
    });
    out << "\n# audit\nlocation,field,claimed,recomputed,detail\n";
    for (const auto& n : b.audit()) {
        out << csv_field(n.location) << ',' << n.field << ',' << opt(n.claimed) << ',' << opt(n.recomputed) << ','
            << csv_field(n.detail) << '\n';
    }
}

void render_json(std::ostream& out, const ReportBundle& b) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["rows"] = ordered_json::array();
    for (const auto& r : b.rows) {
        ordered_json row;
        row["case_id"] = r.case_id;
        row["category"] = std::string(to_string(r.category));
        for (const auto& f : kRowCountFields) row[std::string(f)] = *row_field(r, f);
        j["rows"].push_back(std::move(row));
    }
    ordered_json summary = ordered_json::object();
    for (const auto& l : summary_lines(b.summary)) {
        ordered_json s{{"total", l.total}, {"ce", l.ce}, {"ac", l.ac}, {"mixed", l.mixed}};
        if (l.unclassifiable) s["unclassifiable"] = *l.unclassifiable;
        summary[std::string(l.name)] = std::move(s);
    }
    j["summary"] = std::move(summary);
    ordered_json freq = ordered_json::object();
    for (auto name : kAllControlNames) {
        freq[qualified_name(Control::of(name))] = b.frequency[static_cast<std::size_t>(name)];
    }
    j["control_frequency"] = {{"incidents", b.tree_count}, {"controls", std::move(freq)}};
    j["ransomware_patterns"] = ordered_json::array();
    for (const auto& p : b.patterns) {
        auto uses = [](const std::vector<ControlUse>& v) {
            ordered_json a = ordered_json::array();
            for (const auto& u : v) {
                a.push_back({{"control", qualified_name(u.control)}, {"incidents", u.incidents}, {"l1", u.l1}});
            }
            return a;
        };
        ordered_json mixed = ordered_json::array();
        for (const auto& u : p.top_mixed) {
            mixed.push_back({{"ce", qualified_name(u.ce)},
                             {"ac", qualified_name(u.ac)},
                             {"incidents", u.incidents},
                             {"l1", u.l1}});
        }
        j["ransomware_patterns"].push_back({{"variant", p.variant},
                                            {"cases", p.cases},
                                            {"ce", uses(p.top_ce)},
                                            {"ac", uses(p.top_ac)},
                                            {"mixed", std::move(mixed)}});
    }
    j["audit"] = ordered_json::array();
    for (const auto& n : b.audit()) {
        ordered_json note{{"location", n.location}, {"field", n.field}};
        note["claimed"] = n.claimed ? ordered_json(*n.claimed) : ordered_json(nullptr);
        note["recomputed"] = n.recomputed ? ordered_json(*n.recomputed) : ordered_json(nullptr);
        note["detail"] = n.detail;
        j["audit"].push_back(std::move(note));
    }
    out << j.dump(2) << '\n';
}

void render_table(std::ostream& out, const ReportBundle& b) {
    static constexpr std::array<std::string_view, 13> kHeads = {
        "Total Edges", "CE Edges", "AC Edges", "CE+AC Edges", "CE at L1",  "AC at L1",     "CE+AC at L1",
        "CE at P1",    "AC at P1", "CE+AC at P1", "CE at L1P1", "AC at L1P1", "CE+AC at L1P1",
    };
    std::size_t case_width = 5;
    std::vector<std::string> labels;
    for (const auto& r : b.rows) {
        labels.push_back(r.case_id + "(" + std::string(to_string(r.category)) + ")");
        case_width = std::max(case_width, labels.back().size());
    }
    out << std::left << std::setw(static_cast<int>(case_width)) << "Cases";
    for (auto h : kHeads) out << " | " << h;
    out << '\n';
    for (std::size_t i = 0; i < b.rows.size(); ++i) {
        out << std::left << std::setw(static_cast<int>(case_width)) << labels[i];
        for (std::size_t f = 0; f < kRowCountFields.size(); ++f) {
            out << " | " << std::right << std::setw(static_cast<int>(kHeads[f].size()))
                << *row_field(b.rows[i], kRowCountFields[f]);
        }
        out << '\n';
    }

    out << "\nMethod               | Total |  CE |  AC | CE+AC | Unclassifiable\n";
    static constexpr std::array<std::string_view, 4> kMethod = {"Edge Analysis", "Level Analysis",
                                                                "Phase Analysis", "Level+Phase Analysis"};
    std::size_t m = 0;
    for (const auto& l : summary_lines(b.summary)) {
        out << std::left << std::setw(20) << kMethod[m++] << " | " << std::right << std::setw(5) << l.total << " | "
            << std::setw(3) << l.ce << " | " << std::setw(3) << l.ac << " | " << std::setw(5) << l.mixed << " | "
            << (l.unclassifiable ? std::to_string(*l.unclassifiable) : "-") << '\n';
    }

    out << "\nControl frequency (incidents of " << b.tree_count << ")\n";
    for (auto name : kAllControlNames) {
        out << "  " << std::left << std::setw(28) << qualified_name(Control::of(name)) << std::right << std::setw(4)
            << b.frequency[static_cast<std::size_t>(name)] << '\n';
    }

    if (!b.patterns.empty()) {
        out << "\nRansomware inhibit patterns\n";
        std::string current;
        for_each_pattern_entry(b, [&](const VariantPattern& p, std::string_view cls, const std::string& what,
                                      int incidents, bool l1) {
            if (p.variant != current) {
                current = p.variant;
                out << "  " << p.variant << " (" << p.cases << " case" << (p.cases == 1 ? "" : "s") << ")\n";
            }
            out << "    " << std::left << std::setw(6) << cls << what << (l1 ? " (L1)" : "") << "  x" << incidents
                << '\n';
        });
    }

    out << "\nAudit notes: " << b.audit().size() << '\n';
    for (const auto& n : b.audit()) out << "  " << n.message() << '\n';
}

}  // namespace

void render(std::ostream& out, const ReportBundle& bundle, ReportFormat format) {
    switch (format) {
        case ReportFormat::Csv: render_csv(out, bundle); break;
        case ReportFormat::Json: render_json(out, bundle); break;
        case ReportFormat::Table: render_table(out, bundle); break;
    }
}

}  // namespace ift
