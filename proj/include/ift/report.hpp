#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ift/analysis.hpp"

namespace ift {

/// Everything `analyze` reports; all renderings are produced from one bundle.
struct ReportBundle {
    std::vector<CaseAnalysisRow> rows;
    CorpusSummary summary;
    int tree_count = 0;  ///< frequencies and patterns cover parsed trees only
    ControlFrequency frequency{};
    std::vector<VariantPattern> patterns;

    const std::vector<DiscrepancyNote>& audit() const { return summary.notes; }
};

/// Rows from the trees (in order) followed by any precomputed rows.
ReportBundle build_report(std::span<const ValidTree> trees, std::span<const CaseAnalysisRow> extra_rows,
                          const ClaimTable* claims);

enum class ReportFormat { Csv, Json, Table };

std::optional<ReportFormat> parse_report_format(std::string_view text);

void render(std::ostream& out, const ReportBundle& bundle, ReportFormat format);

}  // namespace ift
