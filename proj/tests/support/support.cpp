#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "ift/dsl.hpp"
#include "ift/table_io.hpp"

namespace ift {

void PrintTo(const CaseAnalysisRow& row, std::ostream* os) {
    *os << row.case_id << "(" << to_string(row.category) << ")";
    for (auto f : kRowCountFields) *os << ' ' << f << '=' << *row_field(row, f);
}

}  // namespace ift

namespace ift::testing {

std::string fixture_path(const std::string& name) { return std::string(IFT_FIXTURE_DIR) + "/" + name; }

std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ValidTree load_fixture_tree(const std::string& name) {
    auto result = parse(read_fixture(name), name);
    if (!result.ok()) {
        std::string msg = "fixture " + name + " does not parse";
        for (const auto& e : result.errors) msg += "\n" + format_error(e);
        throw std::runtime_error(msg);
    }
    return std::move(*result.tree);
}

std::vector<CaseAnalysisRow> published_rows() {
    std::istringstream in(read_fixture("table1.csv"));
    return read_rows(in);
}

namespace {

constexpr const char* kWords[] = {"Phishing", "email", "opened", "payload", "dropped", "RDP", "exposed",
                                  "backup", "deleted", "creds", "dumped", "beacon"};
constexpr const char* kOdd[] = {"quote \"inside\"", "back\\slash", "two\nlines", "tab\there",
                                "caf\xc3\xa9 r\xc3\xa9seau", "\xe2\x86\x92 arrow", "#not a comment"};
// T9999 is unassigned but well-formed, which is all validation asks for.
constexpr const char* kTechniques[] = {"T1059.001", "T1566.002", "T1190", "T1486", "T1490", "T1078", "T9999"};

class Generator {
public:
    Generator(std::mt19937_64& rng, const GenOptions& o) : rng_(rng), o_(o) {}

    FaultTree run() {
        t_.metadata.case_id = "C" + std::to_string(rng_() % 1000);
        t_.metadata.category = static_cast<Category>(rng_() % 4);
        if (chance(40)) t_.metadata.variant = label();
        for (int i = static_cast<int>(rng_() % 3); i > 0; --i) t_.metadata.impacts.push_back(label());

        EventNode top;
        top.id = next_id("T");
        top.kind = EventKind::Intermediate;
        top.label = label();
        t_.events.push_back(top);
        t_.top = 0;
        const auto g = gate(1, true);
        t_.events[0].cause = g;

        auto roots = phase_roots(t_);
        for (auto r : roots) t_.phase_order.push_back(t_.events[r].id);
        std::shuffle(t_.phase_order.begin(), t_.phase_order.end(), rng_);
        return t_;
    }

private:
    bool chance(int percent) { return static_cast<int>(rng_() % 100) < percent; }

    std::string next_id(const char* prefix) { return prefix + std::to_string(++ids_); }

    std::string label() {
        if (o_.odd_labels && chance(15)) return kOdd[rng_() % std::size(kOdd)];
        std::string s;
        for (int i = 1 + static_cast<int>(rng_() % 3); i > 0; --i) {
            if (!s.empty()) s += ' ';
            s += kWords[rng_() % std::size(kWords)];
        }
        return s;
    }

    std::size_t event(int depth) {
        EventNode e;
        if (depth >= o_.max_depth || chance(40)) {
            e.kind = chance(80) ? EventKind::Basic : EventKind::Undeveloped;
            e.id = next_id(e.kind == EventKind::Basic ? "b" : "u");
        } else {
            e.kind = EventKind::Intermediate;
            e.id = next_id("e");
        }
        e.label = label();
        if (chance(30)) {
            std::string tech = kTechniques[rng_() % std::size(kTechniques)];
            e.techniques.push_back(tech);
        }
        t_.events.push_back(e);
        const std::size_t idx = t_.events.size() - 1;
        if (e.kind == EventKind::Intermediate) {
            const auto g = gate(depth + 1, true);
            t_.events[idx].cause = g;
        }
        return idx;
    }

    std::size_t gate(int depth, bool owned_by_event) {
        GateNode g;
        g.id = next_id("g");
        g.kind = chance(50) ? GateKind::And : GateKind::Or;
        const int n = 2 + static_cast<int>(rng_() % 3);
        for (int i = 0; i < n; ++i) {
            if (depth < o_.max_depth && chance(o_.nested_gate_percent)) {
                g.children.push_back(NodeRef::gate(gate(depth + 1, false)));
            } else {
                g.children.push_back(NodeRef::event(event(depth)));
            }
        }
        if (owned_by_event && chance(o_.guard_percent)) {
            const int annotations = chance(15) ? 2 : 1;
            for (int a = 0; a < annotations; ++a) g.inhibits.push_back(annotation());
        }
        t_.gates.push_back(std::move(g));
        return t_.gates.size() - 1;
    }

    InhibitAnnotation annotation() {
        std::vector<ControlName> pool(kAllControlNames.begin(), kAllControlNames.end());
        std::shuffle(pool.begin(), pool.end(), rng_);
        InhibitAnnotation a;
        const int n = 1 + static_cast<int>(rng_() % 3);
        for (int i = 0; i < n; ++i) a.controls.push_back(Control::of(pool[static_cast<std::size_t>(i)]));
        if (n >= 2 && chance(o_.sequential_percent)) a.composition = Composition::Sequential;
        if (chance(o_.condition_percent)) {
            EventNode c;
            c.id = next_id("k");
            c.kind = EventKind::Conditioning;
            c.label = label();
            a.condition = c.id;
            t_.events.push_back(std::move(c));
        }
        return a;
    }

    std::mt19937_64& rng_;
    const GenOptions& o_;
    FaultTree t_;
    int ids_ = 0;
};

}  // namespace

FaultTree random_fault_tree(std::mt19937_64& rng, const GenOptions& options) {
    return Generator(rng, options).run();
}

ValidTree random_tree(std::uint64_t seed, const GenOptions& options) {
    std::mt19937_64 rng(seed);
    return ValidTree::from(random_fault_tree(rng, options));
}

namespace {

std::vector<std::size_t> child_gates(const FaultTree& t, const GateNode& g) {
    std::vector<std::size_t> out;
    for (const auto& c : g.children) {
        if (c.is_gate()) {
            out.push_back(c.index);
        } else if (t.events[c.index].cause) {
            out.push_back(*t.events[c.index].cause);
        }
    }
    return out;
}

// Most guarded gates on any downward path starting at (and counting) g.
int guarded_on_paths(const FaultTree& t, std::size_t g) {
    int best = 0;
    std::function<void(std::size_t, int)> walk = [&](std::size_t gate, int count) {
        const int here = count + (t.gates[gate].inhibits.empty() ? 0 : 1);
        best = std::max(best, here);
        for (auto c : child_gates(t, t.gates[gate])) walk(c, here);
    };
    walk(g, 0);
    return best;
}

}  // namespace

std::map<std::string, int> oracle_levels(const FaultTree& t) {
    std::map<std::string, int> out;
    for (const auto& g : t.gates) {
        if (g.inhibits.empty()) continue;
        int below = 0;
        for (auto c : child_gates(t, g)) below = std::max(below, guarded_on_paths(t, c));
        out[g.id] = below + 1;
    }
    return out;
}

std::map<std::string, std::optional<int>> oracle_phases(const FaultTree& t) {
    std::map<std::string, std::optional<int>> out;
    std::function<void(std::size_t, std::optional<int>)> mark = [&](std::size_t g, std::optional<int> phase) {
        if (!t.gates[g].inhibits.empty()) out[t.gates[g].id] = phase;
        for (auto c : child_gates(t, t.gates[g])) mark(c, phase);
    };
    // Everything outside the phase roots' subtrees hangs directly off the top.
    std::function<void(std::size_t)> top_level = [&](std::size_t g) {
        if (!t.gates[g].inhibits.empty()) out[t.gates[g].id] = std::nullopt;
        for (const auto& c : t.gates[g].children) {
            if (c.is_gate()) {
                top_level(c.index);
                continue;
            }
            const auto& e = t.events[c.index];
            if (!e.cause) continue;
            const auto pos = std::find(t.phase_order.begin(), t.phase_order.end(), e.id);
            if (pos == t.phase_order.end()) throw std::logic_error("phase root missing from phase list");
            mark(*e.cause, static_cast<int>(pos - t.phase_order.begin()) + 1);
        }
    };
    top_level(*t.events[t.top].cause);
    return out;
}

CaseAnalysisRow oracle_row(const FaultTree& t) {
    CaseAnalysisRow row;
    row.case_id = t.metadata.case_id;
    row.category = t.metadata.category;
    const auto levels = oracle_levels(t);
    const auto phases = oracle_phases(t);
    for (const auto& g : t.gates) {
        if (g.inhibits.empty()) continue;
        bool any_ce = false, any_ac = false;
        for (const auto& a : g.inhibits) {
            for (const auto& c : a.controls) {
                (static_cast<int>(c.name) < 5 ? any_ce : any_ac) = true;
            }
        }
        int ClassCounts::*slot = any_ce && any_ac ? &ClassCounts::mixed : any_ce ? &ClassCounts::ce : &ClassCounts::ac;
        const bool l1 = levels.at(g.id) == 1;
        const bool p1 = phases.at(g.id) == std::optional<int>(1);
        ++row.total_edges;
        ++(row.edges.*slot);
        if (l1) ++(row.l1.*slot);
        if (p1) ++(row.p1.*slot);
        if (l1 && p1) ++(row.l1p1.*slot);
    }
    return row;
}

bool oracle_top_occurs(const FaultTree& t, const std::set<ControlName>& deployed) {
    auto satisfied = [&](const InhibitAnnotation& a) {
        std::size_t on = 0;
        for (const auto& c : a.controls) on += deployed.count(c.name);
        return a.composition == Composition::Sequential ? on == a.controls.size() : on > 0;
    };
    std::function<bool(std::size_t)> gate_fires;
    std::function<bool(std::size_t)> event_occurs = [&](std::size_t e) {
        const auto& ev = t.events[e];
        if (!ev.cause) return true;
        const auto& g = t.gates[*ev.cause];
        for (const auto& a : g.inhibits) {
            if (satisfied(a)) return false;
        }
        return gate_fires(*ev.cause);
    };
    gate_fires = [&](std::size_t g) {
        const auto& gate = t.gates[g];
        int fired = 0;
        for (const auto& c : gate.children) fired += c.is_gate() ? gate_fires(c.index) : event_occurs(c.index);
        return gate.kind == GateKind::And ? fired == static_cast<int>(gate.children.size()) : fired > 0;
    };
    return event_occurs(t.top);
}

std::vector<std::vector<Control>> oracle_minimal_sets(const ValidTree& tree, std::size_t max_size) {
    std::set<Control> seen;
    for (const auto& g : tree.tree().gates) {
        for (const auto& a : g.inhibits) seen.insert(a.controls.begin(), a.controls.end());
    }
    const std::vector<Control> universe(seen.begin(), seen.end());
    const std::size_t n = universe.size();
    std::vector<std::uint32_t> blocking;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
        std::set<ControlName> deployed;
        for (std::size_t i = 0; i < n; ++i) {
            if (m & (1u << i)) deployed.insert(universe[i].name);
        }
        if (!oracle_top_occurs(tree.tree(), deployed)) blocking.push_back(m);
    }
    std::vector<std::vector<Control>> out;
    for (auto m : blocking) {
        const bool minimal = std::none_of(blocking.begin(), blocking.end(),
                                          [m](std::uint32_t o) { return o != m && (o & m) == o; });
        if (!minimal || static_cast<std::size_t>(__builtin_popcount(m)) > max_size) continue;
        std::vector<Control> set;
        for (std::size_t i = 0; i < n; ++i) {
            if (m & (1u << i)) set.push_back(universe[i]);
        }
        out.push_back(std::move(set));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

CaseAnalysisRow random_satisfiable_row(std::uint64_t seed) {
    GenOptions o;
    o.max_depth = 5;
    o.guard_percent = 70;
    return oracle_row(random_tree(seed, o).tree());
}

}  // namespace ift::testing
