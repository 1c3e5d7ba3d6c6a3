#include "ift/tree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "ift/attack.hpp"

namespace ift {

std::string_view to_string(IssueCode code) {
    switch (code) {
        case IssueCode::DanglingReference: return "dangling-reference";
        case IssueCode::DuplicateId: return "duplicate-id";
        case IssueCode::TopMissing: return "top-missing";
        case IssueCode::RootNotIntermediate: return "root-not-intermediate";
        case IssueCode::LeafHasChildren: return "leaf-has-children";
        case IssueCode::IntermediateWithoutCause: return "intermediate-without-cause";
        case IssueCode::GateArity: return "gate-arity";
        case IssueCode::GuardDestinationNotIntermediate: return "guard-destination";
        case IssueCode::EmptyAnnotation: return "empty-annotation";
        case IssueCode::SequentialTooShort: return "sequential-too-short";
        case IssueCode::ControlFamilyMismatch: return "control-family";
        case IssueCode::ConditionUnknown: return "condition-unknown";
        case IssueCode::ConditionNotConditioning: return "condition-kind";
        case IssueCode::ConditioningInCausalTree: return "conditioning-in-tree";
        case IssueCode::MultipleParents: return "multiple-parents";
        case IssueCode::Cycle: return "cycle";
        case IssueCode::Unreachable: return "unreachable";
        case IssueCode::InvalidTechnique: return "invalid-technique";
        case IssueCode::PhaseUnknown: return "phase-unknown";
        case IssueCode::PhaseNotRoot: return "phase-not-root";
        case IssueCode::PhaseDuplicate: return "phase-duplicate";
        case IssueCode::PhaseMissing: return "phase-missing";
    }
    return "?";
}

bool ValidationReport::has(IssueCode code) const {
    return std::any_of(issues.begin(), issues.end(),
                       [code](const ValidationIssue& i) { return i.code == code; });
}

InvalidTreeError::InvalidTreeError(ValidationReport report)
    : std::runtime_error(report.issues.empty()
                             ? std::string("invalid fault tree")
                             : "invalid fault tree: " + report.issues.front().message),
      report_(std::move(report)) {}

std::vector<Control> GuardedEdge::controls() const {
    std::vector<Control> out;
    for (const auto& a : annotations) {
        for (const auto& c : a.controls) {
            if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
        }
    }
    return out;
}

namespace {

// Owner of each gate: the event it explains or the gate nesting it.
std::vector<std::optional<NodeRef>> gate_owners(const FaultTree& t) {
    std::vector<std::optional<NodeRef>> owner(t.gates.size());
    for (std::size_t e = 0; e < t.events.size(); ++e) {
        if (t.events[e].cause) owner[*t.events[e].cause] = NodeRef::event(e);
    }
    for (std::size_t g = 0; g < t.gates.size(); ++g) {
        for (const auto& c : t.gates[g].children) {
            if (c.is_gate()) owner[c.index] = NodeRef::gate(g);
        }
    }
    return owner;
}

}  // namespace

std::vector<std::size_t> phase_roots(const FaultTree& t) {
    std::vector<std::size_t> roots;
    if (t.top >= t.events.size() || !t.events[t.top].cause) return roots;
    std::set<std::size_t> seen;
    std::function<void(std::size_t)> walk = [&](std::size_t g) {
        if (!seen.insert(g).second) return;
        for (const auto& c : t.gates[g].children) {
            if (c.is_gate()) {
                walk(c.index);
            } else if (t.events[c.index].kind == EventKind::Intermediate) {
                roots.push_back(c.index);
            }
        }
    };
    walk(*t.events[t.top].cause);
    return roots;
}

ValidationReport validate_tree(const FaultTree& t) {
    ValidationReport report;
    auto add = [&](IssueCode code, std::string subject, std::string message) {
        report.issues.push_back({code, std::move(message), std::move(subject)});
    };

    if (t.top >= t.events.size()) {
        add(IssueCode::TopMissing, "", "tree has no top event");
        return report;
    }

    bool refs_ok = true;
    for (const auto& e : t.events) {
        if (e.cause && *e.cause >= t.gates.size()) {
            add(IssueCode::DanglingReference, e.id, "event '" + e.id + "' refers to a missing gate");
            refs_ok = false;
        }
    }
    for (const auto& g : t.gates) {
        for (const auto& c : g.children) {
            const std::size_t bound = c.is_gate() ? t.gates.size() : t.events.size();
            if (c.index >= bound) {
                add(IssueCode::DanglingReference, g.id, "gate '" + g.id + "' refers to a missing child");
                refs_ok = false;
            }
        }
    }
    if (!refs_ok) return report;

    std::set<std::string> ids;
    for (const auto& e : t.events) {
        if (!ids.insert(e.id).second) add(IssueCode::DuplicateId, e.id, "duplicate id '" + e.id + "'");
    }
    for (const auto& g : t.gates) {
        if (!ids.insert(g.id).second) add(IssueCode::DuplicateId, g.id, "duplicate id '" + g.id + "'");
    }

    for (const auto& e : t.events) {
        for (const auto& tag : e.techniques) {
            if (!is_valid_technique_id(tag)) {
                add(IssueCode::InvalidTechnique, e.id, "invalid ATT&CK technique id '" + tag + "'");
            }
        }
    }

    std::set<std::size_t> referenced_conditions;
    for (const auto& g : t.gates) {
        for (const auto& a : g.inhibits) {
            if (a.controls.empty()) {
                add(IssueCode::EmptyAnnotation, g.id, "inhibit gate on '" + g.id + "' lists no controls");
            }
            if (a.composition == Composition::Sequential && a.controls.size() < 2) {
                add(IssueCode::SequentialTooShort, g.id,
                    "sequential inhibit gate on '" + g.id + "' needs at least two controls");
            }
            for (const auto& c : a.controls) {
                if (!c.consistent()) {
                    add(IssueCode::ControlFamilyMismatch, g.id,
                        "control '" + std::string(to_string(c.name)) + "' does not belong to family " +
                            std::string(to_string(c.family)));
                }
            }
            if (a.condition) {
                auto idx = t.find_event(*a.condition);
                if (!idx) {
                    add(IssueCode::ConditionUnknown, g.id, "unknown conditioning event '" + *a.condition + "'");
                } else if (t.events[*idx].kind != EventKind::Conditioning) {
                    add(IssueCode::ConditionNotConditioning, *a.condition,
                        "condition '" + *a.condition + "' is not a conditioning event");
                } else {
                    referenced_conditions.insert(*idx);
                }
            }
        }
    }

    std::vector<int> event_parents(t.events.size(), 0);
    std::vector<int> gate_parents(t.gates.size(), 0);
    for (const auto& e : t.events) {
        if (e.cause) ++gate_parents[*e.cause];
    }
    for (const auto& g : t.gates) {
        for (const auto& c : g.children) {
            ++(c.is_gate() ? gate_parents[c.index] : event_parents[c.index]);
        }
    }
    for (std::size_t i = 0; i < t.events.size(); ++i) {
        if (event_parents[i] > 1) {
            add(IssueCode::MultipleParents, t.events[i].id, "event '" + t.events[i].id + "' has several parents");
        }
    }
    for (std::size_t i = 0; i < t.gates.size(); ++i) {
        if (gate_parents[i] > 1) {
            add(IssueCode::MultipleParents, t.gates[i].id, "gate '" + t.gates[i].id + "' has several parents");
        }
    }

    const auto& top = t.events[t.top];
    if (top.kind != EventKind::Intermediate) {
        add(IssueCode::RootNotIntermediate, top.id, "root must be an intermediate event");
    }

    // Depth-first walk from the top event: cycle detection and reachability.
    enum class Mark { None, Active, Done };
    std::vector<Mark> event_mark(t.events.size(), Mark::None);
    std::vector<Mark> gate_mark(t.gates.size(), Mark::None);
    bool cyclic = false;
    std::function<void(NodeRef)> visit = [&](NodeRef n) {
        auto& mark = n.is_gate() ? gate_mark[n.index] : event_mark[n.index];
        if (mark == Mark::Active) {
            if (!cyclic) {
                const auto& id = n.is_gate() ? t.gates[n.index].id : t.events[n.index].id;
                add(IssueCode::Cycle, id, "cycle through '" + id + "'");
            }
            cyclic = true;
            return;
        }
        if (mark == Mark::Done) return;
        mark = Mark::Active;
        if (n.is_event()) {
            if (t.events[n.index].cause) visit(NodeRef::gate(*t.events[n.index].cause));
        } else {
            for (const auto& c : t.gates[n.index].children) visit(c);
        }
        mark = Mark::Done;
    };
    visit(NodeRef::event(t.top));

    for (std::size_t i = 0; i < t.events.size(); ++i) {
        const auto& e = t.events[i];
        const bool reached = event_mark[i] != Mark::None;
        if (e.kind == EventKind::Conditioning) {
            if (reached || event_parents[i] > 0) {
                add(IssueCode::ConditioningInCausalTree, e.id,
                    "conditioning event '" + e.id + "' appears in the causal tree");
            } else if (!referenced_conditions.count(i)) {
                add(IssueCode::Unreachable, e.id, "conditioning event '" + e.id + "' is not used by any inhibit gate");
            }
        } else if (!reached) {
            add(IssueCode::Unreachable, e.id, "event '" + e.id + "' is not reachable from the top event");
        }
        if (e.cause && e.kind != EventKind::Intermediate) {
            add(IssueCode::LeafHasChildren, e.id,
                std::string(to_string(e.kind)) + " event '" + e.id + "' cannot have causes");
        }
        if (!e.cause && e.kind == EventKind::Intermediate) {
            add(IssueCode::IntermediateWithoutCause, e.id, "intermediate event '" + e.id + "' has no causes");
        }
    }

    const auto owners = gate_owners(t);
    for (std::size_t i = 0; i < t.gates.size(); ++i) {
        const auto& g = t.gates[i];
        if (gate_mark[i] == Mark::None) {
            add(IssueCode::Unreachable, g.id, "gate '" + g.id + "' is not reachable from the top event");
        }
        if (g.children.size() < 2) {
            add(IssueCode::GateArity, g.id, "gate '" + g.id + "' needs at least two children");
        }
        if (!g.inhibits.empty() && owners[i]) {
            const auto owner = *owners[i];
            if (owner.is_gate() || t.events[owner.index].kind != EventKind::Intermediate) {
                add(IssueCode::GuardDestinationNotIntermediate, g.id, "guard destination not intermediate");
            }
        }
    }

    if (!cyclic) {
        const auto roots = phase_roots(t);
        std::set<std::string> listed;
        for (const auto& id : t.phase_order) {
            if (!listed.insert(id).second) {
                add(IssueCode::PhaseDuplicate, id, "phase '" + id + "' listed twice");
                continue;
            }
            auto idx = t.find_event(id);
            if (!idx) {
                add(IssueCode::PhaseUnknown, id, "unknown phase event '" + id + "'");
            } else if (std::find(roots.begin(), roots.end(), *idx) == roots.end()) {
                add(IssueCode::PhaseNotRoot, id,
                    "phase '" + id + "' is not an intermediate child of the top event");
            }
        }
        for (auto r : roots) {
            if (!listed.count(t.events[r].id)) {
                add(IssueCode::PhaseMissing, t.events[r].id,
                    "phase order does not list '" + t.events[r].id + "'");
            }
        }
    }
    return report;
}

FaultTree canonicalize(const FaultTree& t) {
    FaultTree out;
    out.metadata = t.metadata;
    out.phase_order = t.phase_order;

    std::function<std::size_t(std::size_t)> copy_gate;
    std::function<std::size_t(std::size_t)> copy_event = [&](std::size_t e) {
        const std::size_t at = out.events.size();
        out.events.push_back(t.events[e]);
        if (t.events[e].cause) {
            const std::size_t g = copy_gate(*t.events[e].cause);
            out.events[at].cause = g;
        }
        return at;
    };
    copy_gate = [&](std::size_t g) {
        const std::size_t at = out.gates.size();
        out.gates.push_back(t.gates[g]);
        std::vector<NodeRef> children;
        for (const auto& c : t.gates[g].children) {
            children.push_back(c.is_gate() ? NodeRef::gate(copy_gate(c.index))
                                           : NodeRef::event(copy_event(c.index)));
        }
        out.gates[at].children = std::move(children);
        return at;
    };
    out.top = copy_event(t.top);

    // Conditioning events follow the causal tree, in first-reference order.
    std::set<std::string> placed;
    for (const auto& g : out.gates) {
        for (const auto& a : g.inhibits) {
            if (a.condition && placed.insert(*a.condition).second) {
                if (auto idx = t.find_event(*a.condition)) out.events.push_back(t.events[*idx]);
            }
        }
    }
    return out;
}

ValidTree ValidTree::from(FaultTree tree) {
    auto report = validate_tree(tree);
    if (!report.ok()) throw InvalidTreeError(std::move(report));

    ValidTree v;
    v.tree_ = canonicalize(tree);
    const auto& t = v.tree_;
    const auto owners = gate_owners(t);

    // Canonical layout puts every gate after its ancestors, so a reverse sweep
    // sees all descendants first.
    std::vector<int> below(t.gates.size(), 0);
    std::vector<int> up(t.gates.size(), 0);
    for (std::size_t i = t.gates.size(); i-- > 0;) {
        int deepest = 0;
        for (const auto& c : t.gates[i].children) {
            if (c.is_gate()) {
                deepest = std::max(deepest, up[c.index]);
            } else if (t.events[c.index].cause) {
                deepest = std::max(deepest, up[*t.events[c.index].cause]);
            }
        }
        below[i] = deepest;
        up[i] = t.gates[i].inhibits.empty() ? deepest : deepest + 1;
    }

    std::map<std::string, int> phase_index;
    for (std::size_t i = 0; i < t.phase_order.size(); ++i) {
        phase_index[t.phase_order[i]] = static_cast<int>(i) + 1;
    }
    std::vector<std::size_t> event_parent(t.events.size(), 0);
    for (std::size_t p = 0; p < t.gates.size(); ++p) {
        for (const auto& c : t.gates[p].children) {
            if (c.is_event()) event_parent[c.index] = p;
        }
    }
    v.gate_phase_.assign(t.gates.size(), std::nullopt);
    for (std::size_t i = 0; i < t.gates.size(); ++i) {
        const auto& owner = owners[i];
        if (!owner) continue;
        if (owner->is_gate()) {
            v.gate_phase_[i] = v.gate_phase_[owner->index];
        } else if (owner->index == t.top) {
            v.gate_phase_[i] = std::nullopt;
        } else if (auto it = phase_index.find(t.events[owner->index].id); it != phase_index.end()) {
            v.gate_phase_[i] = it->second;
        } else {
            v.gate_phase_[i] = v.gate_phase_[event_parent[owner->index]];
        }
    }

    for (std::size_t i = 0; i < t.gates.size(); ++i) {
        const auto& g = t.gates[i];
        if (g.inhibits.empty()) continue;
        GuardedEdge edge;
        edge.source = g.id;
        edge.source_index = i;
        edge.destination_index = owners[i]->index;
        edge.destination = t.events[edge.destination_index].id;
        edge.annotations = g.inhibits;
        edge.level = below[i] + 1;
        edge.phase = v.gate_phase_[i];
        v.edges_.push_back(std::move(edge));
    }
    return v;
}

const GuardedEdge* ValidTree::find_edge(std::string_view source_gate) const {
    for (const auto& e : edges_) {
        if (e.source == source_gate) return &e;
    }
    return nullptr;
}

const std::vector<GuardedEdge>& guarded_edges(const ValidTree& tree) { return tree.edges(); }

namespace {
const GuardedEdge& require_edge(const ValidTree& tree, const GuardedEdge& edge) {
    const auto* found = tree.find_edge(edge.source);
    if (!found || found->destination != edge.destination) {
        throw std::invalid_argument("edge " + edge.source + " -> " + edge.destination + " is not in the tree");
    }
    return *found;
}
}  // namespace

int edge_level(const ValidTree& tree, const GuardedEdge& edge) { return require_edge(tree, edge).level; }

std::optional<int> edge_phase(const ValidTree& tree, const GuardedEdge& edge) {
    return require_edge(tree, edge).phase;
}

}  // namespace ift
