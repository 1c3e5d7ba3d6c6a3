#include "ift/whatif.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>

namespace ift {

Deployment::Deployment(std::initializer_list<ControlName> names) {
    for (auto n : names) deploy(n);
}

bool Deployment::active(ControlName name) const {
    auto it = entries_.find(name);
    return it != entries_.end() && it->second;
}

std::vector<Control> Deployment::active_controls() const {
    std::vector<Control> out;
    for (const auto& [name, enabled] : entries_) {
        if (enabled) out.push_back(Control::of(name));
    }
    return out;
}

Deployment read_deployment(std::istream& in) {
    Deployment d;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        std::string text = line.substr(first, last - first + 1);
        bool enabled = true;
        if (text.front() == '!') {
            enabled = false;
            text.erase(0, 1);
        }
        auto control = parse_qualified_control(text);
        if (!control) throw FormatError(lineno, "unknown control '" + text + "'");
        if (d.entries().count(control->name)) throw FormatError(lineno, "control '" + text + "' listed twice");
        d.deploy(control->name, enabled);
    }
    return d;
}

namespace {

bool annotation_satisfied(const InhibitAnnotation& a, const std::function<bool(const Control&)>& deployed) {
    if (a.composition == Composition::Sequential) {
        return std::all_of(a.controls.begin(), a.controls.end(), deployed);
    }
    return std::any_of(a.controls.begin(), a.controls.end(), deployed);
}

// Bottom-up occurrence of the top event given which gates' links are blocked.
bool top_occurs(const FaultTree& t, const std::vector<bool>& gate_blocked) {
    std::vector<bool> gate_value(t.gates.size(), false);
    auto event_occurs = [&](std::size_t e) {
        const auto& ev = t.events[e];
        if (!ev.cause) return true;  // basic and undeveloped events occur
        return gate_value[*ev.cause] && !gate_blocked[*ev.cause];
    };
    for (std::size_t i = t.gates.size(); i-- > 0;) {
        const auto& g = t.gates[i];
        auto child = [&](const NodeRef& c) {
            return c.is_gate() ? gate_value[c.index] : event_occurs(c.index);
        };
        gate_value[i] = g.kind == GateKind::And ? std::all_of(g.children.begin(), g.children.end(), child)
                                                : std::any_of(g.children.begin(), g.children.end(), child);
    }
    return event_occurs(t.top);
}

}  // namespace

bool edge_blocked(const GuardedEdge& edge, const Deployment& deployment) {
    auto deployed = [&](const Control& c) { return deployment.active(c.name); };
    return std::any_of(edge.annotations.begin(), edge.annotations.end(),
                       [&](const InhibitAnnotation& a) { return annotation_satisfied(a, deployed); });
}

AttackOutcome evaluate(const ValidTree& tree, const Deployment& deployment) {
    AttackOutcome out;
    std::vector<bool> gate_blocked(tree.tree().gates.size(), false);
    for (const auto& edge : tree.edges()) {
        if (!edge_blocked(edge, deployment)) continue;
        gate_blocked[edge.source_index] = true;
        out.blocked_edges.push_back(edge.source);
        if (edge.phase && (!out.earliest_blocked_phase || *edge.phase < *out.earliest_blocked_phase)) {
            out.earliest_blocked_phase = edge.phase;
        }
        if (!out.lowest_blocked_level || edge.level < *out.lowest_blocked_level) {
            out.lowest_blocked_level = edge.level;
        }
    }
    out.top_occurs = top_occurs(tree.tree(), gate_blocked);
    return out;
}

std::optional<BlockPoint> earliest_block(const ValidTree& tree, const Deployment& deployment) {
    std::optional<BlockPoint> best;
    // nullopt phase sorts after every numbered phase
    auto key = [](const BlockPoint& p) {
        return std::pair{p.phase.value_or(std::numeric_limits<int>::max()), p.level};
    };
    for (const auto& edge : tree.edges()) {
        if (!edge_blocked(edge, deployment)) continue;
        BlockPoint p{edge.phase, edge.level};
        if (!best || key(p) < key(*best)) best = p;
    }
    return best;
}

ControlUniverseTooLarge::ControlUniverseTooLarge(std::size_t size)
    : std::length_error("control universe of " + std::to_string(size) +
                        " controls exceeds the exhaustive enumeration limit of " +
                        std::to_string(kExhaustiveControlLimit)) {}

std::vector<Control> control_universe(const ValidTree& tree) {
    std::vector<Control> out;
    for (const auto& edge : tree.edges()) {
        for (const auto& c : edge.controls()) {
            if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<Control>> minimal_inhibiting_sets(const ValidTree& tree, std::size_t max_size) {
    const auto universe = control_universe(tree);
    const std::size_t k = universe.size();
    if (k > kExhaustiveControlLimit) throw ControlUniverseTooLarge(k);

    using Mask = std::uint32_t;
    auto bit = [&](const Control& c) {
        const auto it = std::find(universe.begin(), universe.end(), c);
        return Mask{1} << static_cast<unsigned>(it - universe.begin());
    };
    // Each guarded gate is blocked when any of its annotations is satisfied.
    struct Guard {
        std::size_t gate;
        std::vector<std::pair<Composition, Mask>> annotations;
    };
    std::vector<Guard> guards;
    for (const auto& edge : tree.edges()) {
        Guard g{edge.source_index, {}};
        for (const auto& a : edge.annotations) {
            Mask m = 0;
            for (const auto& c : a.controls) m |= bit(c);
            g.annotations.emplace_back(a.composition, m);
        }
        guards.push_back(std::move(g));
    }
    std::vector<bool> gate_blocked(tree.tree().gates.size(), false);
    auto blocks = [&](Mask deployed) {
        for (const auto& g : guards) {
            bool blocked = false;
            for (const auto& [comp, m] : g.annotations) {
                blocked = blocked || (comp == Composition::Sequential ? (deployed & m) == m : (deployed & m) != 0);
            }
            gate_blocked[g.gate] = blocked;
        }
        return !top_occurs(tree.tree(), gate_blocked);
    };

    // By increasing size, in lexicographic order; a set that contains no
    // smaller blocking set and blocks is minimal, by monotonicity.
    std::vector<Mask> found;
    std::vector<std::vector<Control>> out;
    const std::size_t limit = std::min(max_size, k);
    std::vector<std::size_t> pick;
    for (std::size_t size = 0; size <= limit; ++size) {
        pick.resize(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            Mask m = 0;
            for (auto i : pick) m |= Mask{1} << i;
            const bool covered =
                std::any_of(found.begin(), found.end(), [m](Mask f) { return (m & f) == f; });
            if (!covered && blocks(m)) {
                found.push_back(m);
                std::vector<Control> set;
                for (auto i : pick) set.push_back(universe[i]);
                out.push_back(std::move(set));
            }
            // next combination
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == k - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return out;
}

}  // namespace ift
