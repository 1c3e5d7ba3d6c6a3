#include "ift/analysis.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ift {

std::string_view to_string(ControlClass c) {
    switch (c) {
        case ControlClass::CE: return "CE";
        case ControlClass::AC: return "AC";
        case ControlClass::Mixed: return "CE+AC";
    }
    return "?";
}

std::string_view to_string(MitigationClass c) {
    switch (c) {
        case MitigationClass::CE: return "CE";
        case MitigationClass::AC: return "AC";
        case MitigationClass::Mixed: return "CE+AC";
        case MitigationClass::Unclassifiable: return "unclassifiable";
    }
    return "?";
}

ControlClass classify_controls(std::span<const Control> controls) {
    if (controls.empty()) throw std::invalid_argument("cannot classify an edge without controls");
    bool ce = false;
    bool ac = false;
    for (const auto& c : controls) {
        (c.family == ControlFamily::CE ? ce : ac) = true;
    }
    if (ce && ac) return ControlClass::Mixed;
    return ce ? ControlClass::CE : ControlClass::AC;
}

ControlClass classify_edge(const GuardedEdge& edge) {
    const auto controls = edge.controls();
    return classify_controls(controls);
}

int& ClassCounts::operator[](ControlClass c) {
    switch (c) {
        case ControlClass::CE: return ce;
        case ControlClass::AC: return ac;
        case ControlClass::Mixed: break;
    }
    return mixed;
}

int ClassCounts::operator[](ControlClass c) const { return const_cast<ClassCounts&>(*this)[c]; }

ClassCounts& ClassCounts::operator+=(const ClassCounts& o) {
    ce += o.ce;
    ac += o.ac;
    mixed += o.mixed;
    return *this;
}

namespace {

ClassCounts* row_group(CaseAnalysisRow& row, std::string_view suffix) {
    if (suffix == "edges") return &row.edges;
    if (suffix == "l1") return &row.l1;
    if (suffix == "p1") return &row.p1;
    if (suffix == "l1p1") return &row.l1p1;
    return nullptr;
}

int* row_slot(CaseAnalysisRow& row, std::string_view field) {
    if (field == "total_edges") return &row.total_edges;
    const auto us = field.find('_');
    if (us == std::string_view::npos) return nullptr;
    auto* group = row_group(row, field.substr(us + 1));
    if (!group) return nullptr;
    const auto cls = field.substr(0, us);
    if (cls == "ce") return &group->ce;
    if (cls == "ac") return &group->ac;
    if (cls == "mixed") return &group->mixed;
    return nullptr;
}

}  // namespace

std::optional<int> row_field(const CaseAnalysisRow& row, std::string_view field) {
    if (const int* slot = row_slot(const_cast<CaseAnalysisRow&>(row), field)) return *slot;
    return std::nullopt;
}

bool set_row_field(CaseAnalysisRow& row, std::string_view field, int value) {
    int* slot = row_slot(row, field);
    if (!slot) return false;
    *slot = value;
    return true;
}

CaseAnalysisRow case_row(const ValidTree& tree) {
    CaseAnalysisRow row;
    row.case_id = tree.tree().metadata.case_id;
    row.category = tree.tree().metadata.category;
    for (const auto& edge : tree.edges()) {
        const auto cls = classify_edge(edge);
        const bool at_l1 = edge.level == 1;
        const bool at_p1 = edge.phase == 1;
        ++row.total_edges;
        ++row.edges[cls];
        if (at_l1) ++row.l1[cls];
        if (at_p1) ++row.p1[cls];
        if (at_l1 && at_p1) ++row.l1p1[cls];
    }
    return row;
}

MitigationClass case_mitigation_class(const CaseAnalysisRow& row, Scope scope) {
    const ClassCounts& c = scope == Scope::P1 ? row.p1 : row.l1p1;
    if (c.total() == 0) return MitigationClass::Unclassifiable;
    if (c.ac == 0 && c.mixed == 0) return MitigationClass::CE;
    if (c.ce == 0 && c.mixed == 0) return MitigationClass::AC;
    return MitigationClass::Mixed;
}

std::string DiscrepancyNote::message() const {
    std::ostringstream os;
    os << location << ": " << field;
    if (claimed) os << " claimed " << *claimed;
    if (claimed && recomputed) os << ',';
    if (recomputed) os << " recomputed " << *recomputed;
    if (!detail.empty()) os << " (" << detail << ')';
    return os.str();
}

std::optional<long> CorpusSummary::field(std::string_view name) const {
    if (name == "total_edges") return total_edges;
    if (name == "ce_edges") return edges.ce;
    if (name == "ac_edges") return edges.ac;
    if (name == "mixed_edges") return edges.mixed;
    if (name == "ce_l1") return l1.ce;
    if (name == "ac_l1") return l1.ac;
    if (name == "mixed_l1") return l1.mixed;
    if (name == "total_l1") return total_l1;
    if (name == "cases_total") return cases;
    if (name == "p1_ce_cases") return phase.ce;
    if (name == "p1_ac_cases") return phase.ac;
    if (name == "p1_mixed_cases") return phase.mixed;
    if (name == "l1p1_ce_cases") return level_phase.ce;
    if (name == "l1p1_ac_cases") return level_phase.ac;
    if (name == "l1p1_mixed_cases") return level_phase.mixed;
    return std::nullopt;
}

namespace {

void tally(CaseTally& t, MitigationClass c) {
    ++t.cases;
    switch (c) {
        case MitigationClass::CE: ++t.ce; break;
        case MitigationClass::AC: ++t.ac; break;
        case MitigationClass::Mixed: ++t.mixed; break;
        case MitigationClass::Unclassifiable: ++t.unclassifiable; break;
    }
}

// Column sums for the per-row count fields that have no aggregate meaning
// (p1/l1p1 edge counts) are still useful to audit against per-field claims.
std::optional<long> column_sum(std::span<const CaseAnalysisRow> rows, std::string_view field) {
    if (!row_field(CaseAnalysisRow{}, field)) return std::nullopt;
    long sum = 0;
    for (const auto& r : rows) sum += *row_field(r, field);
    return sum;
}

}  // namespace

CorpusSummary aggregate_corpus(std::span<const CaseAnalysisRow> rows, const ClaimTable* claims) {
    CorpusSummary s;
    for (const auto& r : rows) {
        ++s.cases;
        s.total_edges += r.total_edges;
        s.edges += r.edges;
        s.l1 += r.l1;
        tally(s.phase, case_mitigation_class(r, Scope::P1));
        tally(s.level_phase, case_mitigation_class(r, Scope::L1P1));
    }
    s.total_l1 = s.l1.total();
    s.notes = audit_rows(rows);
    if (claims) {
        auto more = audit_consistency(rows, *claims);
        s.notes.insert(s.notes.end(), more.begin(), more.end());
    }
    return s;
}

std::vector<DiscrepancyNote> audit_rows(std::span<const CaseAnalysisRow> rows) {
    std::vector<DiscrepancyNote> notes;
    for (const auto& r : rows) {
        if (r.edges.total() != r.total_edges) {
            notes.push_back({r.case_id, "total_edges", r.total_edges, r.edges.total(),
                             "ce_edges + ac_edges + mixed_edges"});
        }
        static constexpr std::array<std::string_view, 3> kCls = {"ce", "ac", "mixed"};
        for (std::size_t i = 0; i < kCls.size(); ++i) {
            const auto cls = static_cast<ControlClass>(i);
            const std::string c(kCls[i]);
            auto check = [&](int part, int whole, const std::string& part_name, const std::string& whole_name) {
                if (part > whole) {
                    notes.push_back({r.case_id, part_name, part, std::nullopt,
                                     "exceeds " + whole_name + " = " + std::to_string(whole)});
                }
            };
            check(r.l1[cls], r.edges[cls], c + "_l1", c + "_edges");
            check(r.p1[cls], r.edges[cls], c + "_p1", c + "_edges");
            check(r.l1p1[cls], r.l1[cls], c + "_l1p1", c + "_l1");
            check(r.l1p1[cls], r.p1[cls], c + "_l1p1", c + "_p1");
        }
    }
    return notes;
}

std::vector<DiscrepancyNote> audit_consistency(std::span<const CaseAnalysisRow> rows, const ClaimTable& claims) {
    std::vector<DiscrepancyNote> notes;
    const CorpusSummary summary = aggregate_corpus(rows);
    for (const auto& claim : claims.rows) {
        if (claim.case_id == "TOTAL") {
            for (const auto& [field, value] : claim.values) {
                std::optional<long> actual = summary.field(field);
                if (!actual) actual = column_sum(rows, field);
                if (!actual) {
                    notes.push_back({"TOTAL", field, value, std::nullopt, "unknown field"});
                } else if (*actual != value) {
                    notes.push_back({"TOTAL", field, value, *actual, {}});
                }
            }
            continue;
        }
        auto it = std::find_if(rows.begin(), rows.end(),
                               [&](const CaseAnalysisRow& r) { return r.case_id == claim.case_id; });
        if (it == rows.end()) {
            notes.push_back({claim.case_id, "case_id", std::nullopt, std::nullopt, "claimed case not in corpus"});
            continue;
        }
        for (const auto& [field, value] : claim.values) {
            const auto actual = row_field(*it, field);
            if (!actual) {
                notes.push_back({claim.case_id, field, value, std::nullopt, "unknown field"});
            } else if (*actual != value) {
                notes.push_back({claim.case_id, field, value, *actual, {}});
            }
        }
    }
    return notes;
}

ControlFrequency control_frequency(std::span<const ValidTree> corpus) {
    ControlFrequency freq{};
    for (const auto& tree : corpus) {
        std::array<bool, kControlCount> present{};
        for (const auto& edge : tree.edges()) {
            for (const auto& c : edge.controls()) present[c.index()] = true;
        }
        for (std::size_t i = 0; i < kControlCount; ++i) freq[i] += present[i] ? 1 : 0;
    }
    return freq;
}

namespace {

// Per-key usage within one variant: incidents containing the key, and a
// histogram of edge levels it appears at.
template <typename Key>
struct Usage {
    std::map<Key, int> incidents;
    std::map<Key, std::map<int, int>> levels;

    void add_case(const std::set<Key>& keys) {
        for (const auto& k : keys) ++incidents[k];
    }
    bool modal_level_one(const Key& k) const {
        const auto& hist = levels.at(k);
        int best = 0;
        for (const auto& [lvl, n] : hist) best = std::max(best, n);
        auto one = hist.find(1);
        return one != hist.end() && one->second == best;
    }
    std::vector<Key> top() const {
        int best = 0;
        for (const auto& [k, n] : incidents) best = std::max(best, n);
        std::vector<Key> out;
        for (const auto& [k, n] : incidents) {
            if (n == best && n > 0) out.push_back(k);
        }
        return out;
    }
};

using PairKey = std::pair<Control, Control>;

struct VariantAccumulator {
    std::string variant;
    int cases = 0;
    Usage<Control> ce;
    Usage<Control> ac;
    Usage<PairKey> mixed;
};

}  // namespace

std::vector<VariantPattern> ransomware_patterns(std::span<const ValidTree> corpus) {
    std::vector<VariantAccumulator> acc;
    for (const auto& tree : corpus) {
        const auto& meta = tree.tree().metadata;
        if (meta.category != Category::Ransomware) continue;
        const std::string variant = meta.variant.value_or("Others");
        auto it = std::find_if(acc.begin(), acc.end(), [&](const auto& a) { return a.variant == variant; });
        if (it == acc.end()) {
            acc.push_back(VariantAccumulator{variant, 0, {}, {}, {}});
            it = std::prev(acc.end());
        }
        ++it->cases;
        std::set<Control> ce_keys;
        std::set<Control> ac_keys;
        std::set<PairKey> pair_keys;
        for (const auto& edge : tree.edges()) {
            const auto controls = edge.controls();
            switch (classify_controls(controls)) {
                case ControlClass::CE:
                    for (const auto& c : controls) {
                        ce_keys.insert(c);
                        ++it->ce.levels[c][edge.level];
                    }
                    break;
                case ControlClass::AC:
                    for (const auto& c : controls) {
                        ac_keys.insert(c);
                        ++it->ac.levels[c][edge.level];
                    }
                    break;
                case ControlClass::Mixed:
                    for (const auto& a : controls) {
                        if (a.family != ControlFamily::CE) continue;
                        for (const auto& b : controls) {
                            if (b.family != ControlFamily::AC) continue;
                            const PairKey key{a, b};
                            pair_keys.insert(key);
                            ++it->mixed.levels[key][edge.level];
                        }
                    }
                    break;
            }
        }
        it->ce.add_case(ce_keys);
        it->ac.add_case(ac_keys);
        it->mixed.add_case(pair_keys);
    }

    std::vector<VariantPattern> out;
    for (const auto& a : acc) {
        VariantPattern p;
        p.variant = a.variant;
        p.cases = a.cases;
        for (const auto& c : a.ce.top()) p.top_ce.push_back({c, a.ce.incidents.at(c), a.ce.modal_level_one(c)});
        for (const auto& c : a.ac.top()) p.top_ac.push_back({c, a.ac.incidents.at(c), a.ac.modal_level_one(c)});
        for (const auto& k : a.mixed.top()) {
            p.top_mixed.push_back({k.first, k.second, a.mixed.incidents.at(k), a.mixed.modal_level_one(k)});
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace ift
