#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ift/tree.hpp"

namespace ift {

enum class ControlClass { CE, AC, Mixed };

std::string_view to_string(ControlClass c);

/// CE iff every control is CE-family, AC iff every control is AC-family,
/// Mixed otherwise. Throws std::invalid_argument on an empty list.
ControlClass classify_controls(std::span<const Control> controls);
ControlClass classify_edge(const GuardedEdge& edge);

struct ClassCounts {
    int ce = 0;
    int ac = 0;
    int mixed = 0;

    int total() const { return ce + ac + mixed; }
    int& operator[](ControlClass c);
    int operator[](ControlClass c) const;
    ClassCounts& operator+=(const ClassCounts& o);

    friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

/// One incident's analysis record, in the column order of the published
/// per-case table.
struct CaseAnalysisRow {
    std::string case_id;
    Category category = Category::Ransomware;
    int total_edges = 0;
    ClassCounts edges;
    ClassCounts l1;
    ClassCounts p1;
    ClassCounts l1p1;

    friend bool operator==(const CaseAnalysisRow&, const CaseAnalysisRow&) = default;
};

/// Count columns in published order: total_edges, ce_edges, ... mixed_l1p1.
inline constexpr std::array<std::string_view, 13> kRowCountFields = {
    "total_edges", "ce_edges", "ac_edges", "mixed_edges", "ce_l1",   "ac_l1",    "mixed_l1",
    "ce_p1",       "ac_p1",    "mixed_p1", "ce_l1p1",    "ac_l1p1", "mixed_l1p1",
};

std::optional<int> row_field(const CaseAnalysisRow& row, std::string_view field);
/// Sets a count field by name; returns false for unknown names.
bool set_row_field(CaseAnalysisRow& row, std::string_view field, int value);

CaseAnalysisRow case_row(const ValidTree& tree);

enum class Scope { P1, L1P1 };
enum class MitigationClass { CE, AC, Mixed, Unclassifiable };

std::string_view to_string(MitigationClass c);

/// Which family mitigates the case within the scope: CE when only CE-class
/// edges are present, AC when only AC-class, Mixed otherwise; Unclassifiable
/// when the scope holds no edge at all.
MitigationClass case_mitigation_class(const CaseAnalysisRow& row, Scope scope);

struct CaseTally {
    int cases = 0;
    int ce = 0;
    int ac = 0;
    int mixed = 0;
    int unclassifiable = 0;

    friend bool operator==(const CaseTally&, const CaseTally&) = default;
};

/// A reference value that disagrees with what the rows recompute to.
struct DiscrepancyNote {
    std::string location;  ///< "TOTAL" or a case id
    std::string field;
    std::optional<long> claimed;
    std::optional<long> recomputed;
    std::string detail;

    std::string message() const;
    friend bool operator==(const DiscrepancyNote&, const DiscrepancyNote&) = default;
};

/// Claimed reference values. The row with case_id "TOTAL" carries aggregate
/// claims; any other row carries claims for that case.
struct ClaimTable {
    struct Row {
        std::string case_id;
        std::map<std::string, long> values;
    };
    std::vector<Row> rows;
};

/// Aggregate-only claim columns accepted on the TOTAL row besides the count fields.
inline constexpr std::array<std::string_view, 8> kAggregateClaimFields = {
    "total_l1",       "cases_total",   "p1_ce_cases",   "p1_ac_cases",
    "p1_mixed_cases", "l1p1_ce_cases", "l1p1_ac_cases", "l1p1_mixed_cases",
};

struct CorpusSummary {
    int cases = 0;
    int total_edges = 0;
    ClassCounts edges;
    int total_l1 = 0;
    ClassCounts l1;
    CaseTally phase;
    CaseTally level_phase;
    std::vector<DiscrepancyNote> notes;

    /// Aggregate by claim-column name (count fields are column sums).
    std::optional<long> field(std::string_view name) const;
};

CorpusSummary aggregate_corpus(std::span<const CaseAnalysisRow> rows, const ClaimTable* claims = nullptr);

/// Internal consistency of each row: the class partition of total_edges and
/// the L1P1 <= L1, L1P1 <= P1 and L1/P1 <= class total restrictions.
std::vector<DiscrepancyNote> audit_rows(std::span<const CaseAnalysisRow> rows);

/// One note per claimed value that differs from the recomputation.
std::vector<DiscrepancyNote> audit_consistency(std::span<const CaseAnalysisRow> rows, const ClaimTable& claims);

/// Number of incidents in which each control guards at least one edge,
/// indexed by ControlName.
using ControlFrequency = std::array<int, kControlCount>;
ControlFrequency control_frequency(std::span<const ValidTree> corpus);

struct ControlUse {
    Control control;
    int incidents = 0;
    bool l1 = false;  ///< level 1 is among the control's modal levels

    friend bool operator==(const ControlUse&, const ControlUse&) = default;
};

struct PairUse {
    Control ce;
    Control ac;
    int incidents = 0;
    bool l1 = false;

    friend bool operator==(const PairUse&, const PairUse&) = default;
};

struct VariantPattern {
    std::string variant;
    int cases = 0;
    std::vector<ControlUse> top_ce;
    std::vector<ControlUse> top_ac;
    std::vector<PairUse> top_mixed;

    friend bool operator==(const VariantPattern&, const VariantPattern&) = default;
};

/// Per ransomware variant (cases without a variant are grouped as "Others"):
/// the CE controls on CE-class edges, AC controls on AC-class edges and
/// CE x AC pairs on Mixed edges that occur in the most incidents. Ties are all
/// reported. Variants appear in first-seen order.
std::vector<VariantPattern> ransomware_patterns(std::span<const ValidTree> corpus);

}  // namespace ift
