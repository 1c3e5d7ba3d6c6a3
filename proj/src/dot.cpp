#include "ift/dot.hpp"

#include <sstream>

#include "ift/attack.hpp"

namespace ift {

namespace {

std::string esc(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out + "\"";
}

std::string_view shape(EventKind kind) {
    switch (kind) {
        case EventKind::Intermediate: return "box";
        case EventKind::Basic: return "circle";
        case EventKind::Undeveloped: return "diamond";
        case EventKind::Conditioning: return "ellipse";
    }
    return "box";
}

std::string annotation_label(const InhibitAnnotation& a) {
    const std::string_view sep = a.composition == Composition::Sequential ? "→" : " || ";
    std::string out;
    for (std::size_t i = 0; i < a.controls.size(); ++i) {
        if (i) out += sep;
        out += qualified_name(a.controls[i]);
    }
    return out;
}

}  // namespace

std::string export_dot(const ValidTree& vt) {
    const auto& t = vt.tree();
    std::ostringstream os;
    std::string title = t.metadata.case_id + " (" + std::string(to_string(t.metadata.category));
    if (t.metadata.variant) title += ", " + *t.metadata.variant;
    title += ")";

    os << "digraph " << esc(t.metadata.case_id) << " {\n";
    os << "  graph [rankdir=TB, charset=\"UTF-8\", label=" << esc(title) << ", labelloc=t];\n";
    os << "  node [fontname=\"Helvetica\", fontsize=10];\n";
    os << "  edge [dir=back];\n";

    for (const auto& e : t.events) {
        std::string label = e.id + "\n" + e.label;
        for (const auto& tag : e.techniques) {
            label += "\n" + tag;
            if (auto name = technique_name(tag)) label += " " + std::string(*name);
        }
        os << "  " << esc(e.id) << " [shape=" << shape(e.kind);
        if (e.kind == EventKind::Conditioning) os << ", style=dashed";
        os << ", label=" << esc(label) << "];\n";
    }
    for (const auto& g : t.gates) {
        os << "  " << esc(g.id) << " [shape=" << (g.kind == GateKind::And ? "house" : "invtriangle")
           << ", label=" << esc(g.kind == GateKind::And ? "AND" : "OR") << "];\n";
    }

    for (std::size_t i = 0; i < t.events.size(); ++i) {
        const auto& e = t.events[i];
        if (!e.cause) continue;
        const auto& g = t.gates[*e.cause];
        os << "  " << esc(e.id) << " -> " << esc(g.id);
        if (!g.inhibits.empty()) {
            std::string label;
            for (std::size_t a = 0; a < g.inhibits.size(); ++a) {
                if (a) label += "\n";
                label += annotation_label(g.inhibits[a]);
            }
            os << " [class=\"inhibit\", arrowtail=tee, penwidth=2, color=\"firebrick\", label=" << esc(label)
               << "]";
        }
        os << ";\n";
    }
    for (const auto& g : t.gates) {
        for (const auto& c : g.children) {
            const auto& id = c.is_gate() ? t.gates[c.index].id : t.events[c.index].id;
            os << "  " << esc(g.id) << " -> " << esc(id) << ";\n";
        }
        for (const auto& a : g.inhibits) {
            if (a.condition) {
                os << "  " << esc(*a.condition) << " -> " << esc(g.id)
                   << " [style=dashed, dir=none, class=\"condition\"];\n";
            }
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace ift
