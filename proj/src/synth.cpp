#include "ift/synth.hpp"

#include <algorithm>
#include <array>
#include <random>

namespace ift {

UnsatisfiableProfile::UnsatisfiableProfile(std::string constraint)
    : std::invalid_argument("unsatisfiable profile: " + constraint), constraint_(std::move(constraint)) {}

namespace {

constexpr std::array<ControlClass, 3> kClasses = {ControlClass::CE, ControlClass::AC, ControlClass::Mixed};
constexpr std::array<const char*, 3> kClassPrefix = {"ce", "ac", "mixed"};

}  // namespace

std::vector<std::string> profile_violations(const CaseAnalysisRow& t) {
    std::vector<std::string> out;
    if (t.total_edges != t.edges.total()) out.emplace_back("total_edges = ce_edges + ac_edges + mixed_edges");
    for (std::size_t i = 0; i < kClasses.size(); ++i) {
        const auto c = kClasses[i];
        const std::string p = kClassPrefix[i];
        if (t.l1[c] > t.edges[c]) out.push_back(p + "_l1 <= " + p + "_edges");
        if (t.p1[c] > t.edges[c]) out.push_back(p + "_p1 <= " + p + "_edges");
        if (t.l1p1[c] > t.l1[c]) out.push_back(p + "_l1p1 <= " + p + "_l1");
        if (t.l1p1[c] > t.p1[c]) out.push_back(p + "_l1p1 <= " + p + "_p1");
        if (t.l1[c] + t.p1[c] - t.l1p1[c] > t.edges[c]) {
            out.push_back(p + "_l1 + " + p + "_p1 - " + p + "_l1p1 <= " + p + "_edges");
        }
    }
    if (!out.empty()) return out;

    const int edges = t.edges.total();
    const int l1 = t.l1.total();
    const int p1 = t.p1.total();
    const int l1p1 = t.l1p1.total();
    const int upper_outside_p1 = edges - l1 - p1 + l1p1;
    if (edges > 0 && l1 == 0) out.emplace_back("guarded edges require at least one L1 edge");
    if (p1 > 0 && l1p1 == 0) out.emplace_back("P1 edges require at least one L1P1 edge");
    if (l1 - l1p1 == 0 && upper_outside_p1 > 1) {
        out.emplace_back("more than one edge above L1 outside P1 requires an L1 edge outside P1");
    }
    return out;
}

namespace {

constexpr std::array<const char*, 16> kBasicLabels = {
    "Phishing email delivered",          "User opened malicious attachment",
    "Legitimate command-line tool abused", "Remote service execution permitted",
    "Unpatched public-facing service",   "Default credentials in use",
    "Antivirus disabled by attacker",    "Scheduled task created",
    "RDP exposed to the internet",       "Administrator account created",
    "SMB shares writable",               "Backups reachable from the domain",
    "Shadow copies deleted",             "Credentials dumped from memory",
    "Payload downloaded over HTTPS",     "Logging not centrally collected",
};

constexpr std::array<const char*, 10> kTechniques = {
    "T1566.001", "T1204.002", "T1059.001", "T1569.002", "T1190",
    "T1078",     "T1562.001", "T1053.005", "T1021.001", "T1490",
};

class Builder {
public:
    explicit Builder(std::uint64_t seed) : rng_(seed) {}

    FaultTree tree;

    std::size_t pick(std::size_t n) { return n <= 1 ? 0 : static_cast<std::size_t>(rng_() % n); }
    bool chance(int percent) { return static_cast<int>(rng_() % 100) < percent; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[pick(i)]);
    }

    std::size_t leaf() {
        EventNode e;
        e.kind = chance(12) ? EventKind::Undeveloped : EventKind::Basic;
        e.id = (e.kind == EventKind::Basic ? "B" : "U") + std::to_string(++basics_);
        e.label = kBasicLabels[pick(kBasicLabels.size())];
        if (chance(40)) e.techniques.emplace_back(kTechniques[pick(kTechniques.size())]);
        tree.events.push_back(std::move(e));
        return tree.events.size() - 1;
    }

    std::vector<InhibitAnnotation> guard(ControlClass cls) {
        std::vector<Control> controls;
        auto draw = [&](std::size_t first, std::size_t count) {
            std::vector<Control> pool;
            for (std::size_t i = first; i < first + 5; ++i) pool.push_back(Control::of(kAllControlNames[i]));
            shuffle(pool);
            controls.insert(controls.end(), pool.begin(), pool.begin() + static_cast<long>(count));
        };
        if (cls != ControlClass::AC) draw(0, 1 + pick(2));
        if (cls != ControlClass::CE) draw(5, 1 + pick(2));
        shuffle(controls);

        std::vector<InhibitAnnotation> out;
        if (controls.size() >= 2 && chance(15)) {
            // two inhibit gates on the same link, merged into one edge
            const std::size_t cut = 1 + pick(controls.size() - 1);
            out.push_back({{controls.begin(), controls.begin() + static_cast<long>(cut)}, Composition::Parallel, {}});
            out.push_back({{controls.begin() + static_cast<long>(cut), controls.end()}, Composition::Parallel, {}});
        } else {
            InhibitAnnotation a{controls, Composition::Parallel, {}};
            if (controls.size() >= 2 && chance(25)) a.composition = Composition::Sequential;
            out.push_back(std::move(a));
        }
        if (chance(10)) {
            EventNode cond;
            cond.id = "C" + std::to_string(++conditions_);
            cond.kind = EventKind::Conditioning;
            cond.label = "Control operating as designed";
            out.front().condition = cond.id;
            tree.events.push_back(std::move(cond));
        }
        return out;
    }

    // Intermediate event explained by a gate over `children` (padded with
    // leaves to at least two children).
    std::size_t intermediate(std::vector<NodeRef> children, std::vector<InhibitAnnotation> inhibits) {
        while (children.size() < 2 || chance(20)) {
            children.push_back(NodeRef::event(leaf()));
            if (children.size() >= 4) break;
        }
        shuffle(children);
        GateNode g;
        g.id = "G" + std::to_string(++gates_);
        g.kind = chance(50) ? GateKind::And : GateKind::Or;
        if (chance(10) && children.size() >= 4) {
            // nested unguarded gate grouping two of the children
            GateNode inner;
            inner.id = "G" + std::to_string(++gates_);
            inner.kind = g.kind == GateKind::And ? GateKind::Or : GateKind::And;
            inner.children = {children[0], children[1]};
            tree.gates.push_back(std::move(inner));
            children.erase(children.begin(), children.begin() + 2);
            children.push_back(NodeRef::gate(tree.gates.size() - 1));
        }
        g.children = std::move(children);
        g.inhibits = std::move(inhibits);
        tree.gates.push_back(std::move(g));

        EventNode e;
        e.id = "E" + std::to_string(++intermediates_);
        e.kind = EventKind::Intermediate;
        e.label = "Attack step " + std::to_string(intermediates_);
        if (chance(25)) e.techniques.emplace_back(kTechniques[pick(kTechniques.size())]);
        e.cause = tree.gates.size() - 1;
        tree.events.push_back(std::move(e));
        return tree.events.size() - 1;
    }

    // A phase subtree holding `lowest` L1 edges and `upper` edges above them.
    std::size_t phase(const std::vector<ControlClass>& lowest, const std::vector<ControlClass>& upper) {
        std::vector<std::size_t> pool;
        for (auto cls : lowest) pool.push_back(intermediate({}, guard(cls)));
        if (chance(30)) pool.push_back(intermediate({}, {}));  // unguarded branch
        for (auto cls : upper) {
            // take at least one root that carries a guarded edge
            std::vector<NodeRef> children;
            const std::size_t k = 1 + pick(std::min<std::size_t>(3, pool.size()));
            shuffle(pool);
            std::stable_partition(pool.begin(), pool.end(), [&](std::size_t e) { return has_guard_below(e); });
            for (std::size_t i = 0; i < k; ++i) children.push_back(NodeRef::event(pool[i]));
            pool.erase(pool.begin(), pool.begin() + static_cast<long>(k));
            pool.push_back(intermediate(std::move(children), guard(cls)));
        }
        if (pool.size() == 1) return pool.front();
        std::vector<NodeRef> children;
        for (auto e : pool) children.push_back(NodeRef::event(e));
        return intermediate(std::move(children), {});
    }

private:
    bool has_guard_below(std::size_t event) const {
        const auto& e = tree.events[event];
        if (!e.cause) return false;
        const auto& g = tree.gates[*e.cause];
        if (!g.inhibits.empty()) return true;
        for (const auto& c : g.children) {
            if (c.is_event() && has_guard_below(c.index)) return true;
            if (c.is_gate()) {
                for (const auto& cc : tree.gates[c.index].children) {
                    if (cc.is_event() && has_guard_below(cc.index)) return true;
                }
            }
        }
        return false;
    }

    std::mt19937_64 rng_;
    int basics_ = 0;
    int intermediates_ = 0;
    int gates_ = 0;
    int conditions_ = 0;
};

std::vector<ControlClass> expand(const ClassCounts& c) {
    std::vector<ControlClass> out;
    for (auto cls : kClasses) out.insert(out.end(), static_cast<std::size_t>(c[cls]), cls);
    return out;
}

ClassCounts minus(ClassCounts a, const ClassCounts& b) {
    a.ce -= b.ce;
    a.ac -= b.ac;
    a.mixed -= b.mixed;
    return a;
}

}  // namespace

ValidTree synthesize_tree(const SynthesisProfile& profile) {
    const auto& t = profile.target;
    if (auto v = profile_violations(t); !v.empty()) throw UnsatisfiableProfile(v.front());

    Builder b(profile.seed);
    b.tree.metadata.case_id = t.case_id.empty() ? "SYNTH" : t.case_id;
    b.tree.metadata.category = t.category;
    b.tree.metadata.variant = profile.variant;

    // Edge classes by placement.
    auto p1_lowest = expand(t.l1p1);
    auto p1_upper = expand(minus(t.p1, t.l1p1));
    auto other_lowest = expand(minus(t.l1, t.l1p1));
    ClassCounts upper_other_counts = t.edges;
    upper_other_counts = minus(minus(upper_other_counts, t.l1), minus(t.p1, t.l1p1));
    auto other_upper = expand(upper_other_counts);
    b.shuffle(p1_lowest);
    b.shuffle(p1_upper);
    b.shuffle(other_lowest);
    b.shuffle(other_upper);

    std::optional<ControlClass> top_guard;
    if (!other_upper.empty() && (other_lowest.empty() || b.chance(30))) {
        top_guard = other_upper.back();
        other_upper.pop_back();
    }

    std::vector<std::size_t> roots;
    roots.push_back(b.phase(p1_lowest, p1_upper));
    if (!other_lowest.empty()) {
        const std::size_t phases = 1 + b.pick(std::min<std::size_t>(3, other_lowest.size()));
        std::vector<std::vector<ControlClass>> lowest(phases);
        std::vector<std::vector<ControlClass>> upper(phases);
        for (std::size_t i = 0; i < other_lowest.size(); ++i) {
            lowest[i < phases ? i : b.pick(phases)].push_back(other_lowest[i]);
        }
        for (auto cls : other_upper) upper[b.pick(phases)].push_back(cls);
        for (std::size_t p = 0; p < phases; ++p) roots.push_back(b.phase(lowest[p], upper[p]));
    }
    if (b.chance(20)) roots.push_back(b.phase({}, {}));

    for (auto r : roots) b.tree.phase_order.push_back(b.tree.events[r].id);

    std::vector<NodeRef> top_children;
    for (auto r : roots) top_children.push_back(NodeRef::event(r));
    std::vector<InhibitAnnotation> top_inhibits;
    if (top_guard) top_inhibits = b.guard(*top_guard);
    b.tree.top = b.intermediate(std::move(top_children), std::move(top_inhibits));
    b.tree.events[b.tree.top].id = "TOP";
    b.tree.events[b.tree.top].label = "Incident " + b.tree.metadata.case_id;

    ValidTree out = ValidTree::from(std::move(b.tree));
    auto got = case_row(out);
    got.case_id = t.case_id;  // an empty target id is replaced by "SYNTH"
    if (got != t) throw std::logic_error("synthesized tree does not reproduce its profile");
    return out;
}

}  // namespace ift
