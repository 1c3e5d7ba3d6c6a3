#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ift/control.hpp"

namespace ift {

enum class EventKind { Basic, Intermediate, Undeveloped, Conditioning };
enum class GateKind { And, Or };
enum class Composition { Parallel, Sequential };
enum class Category { Ransomware, Phishing, MalwareExecution, CVExploitation };

std::string_view to_string(EventKind kind);
std::string_view to_string(GateKind kind);
std::string_view to_string(Composition composition);
std::string_view to_string(Category category);
std::optional<Category> parse_category(std::string_view text);

/// Reference to an event or a gate by position in FaultTree storage.
struct NodeRef {
    enum class Type { Event, Gate };
    Type type = Type::Event;
    std::size_t index = 0;

    static NodeRef event(std::size_t i) { return {Type::Event, i}; }
    static NodeRef gate(std::size_t i) { return {Type::Gate, i}; }
    bool is_event() const { return type == Type::Event; }
    bool is_gate() const { return type == Type::Gate; }

    friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

struct InhibitAnnotation {
    std::vector<Control> controls;
    Composition composition = Composition::Parallel;
    /// Id of a Conditioning event. Metadata only; never affects counting.
    std::optional<std::string> condition;

    friend bool operator==(const InhibitAnnotation&, const InhibitAnnotation&) = default;
};

struct EventNode {
    std::string id;
    std::string label;
    EventKind kind = EventKind::Basic;
    std::vector<std::string> techniques;
    /// The gate explaining this event, if any (index into FaultTree::gates).
    std::optional<std::size_t> cause;

    friend bool operator==(const EventNode&, const EventNode&) = default;
};

/// An And/Or gate. `inhibits` guard the link from this gate to the node that
/// owns it; several inhibit gates on that link form one guarded edge.
struct GateNode {
    std::string id;
    GateKind kind = GateKind::And;
    std::vector<NodeRef> children;
    std::vector<InhibitAnnotation> inhibits;

    friend bool operator==(const GateNode&, const GateNode&) = default;
};

struct CaseMetadata {
    std::string case_id;
    Category category = Category::Ransomware;
    std::optional<std::string> variant;
    std::vector<std::string> impacts;

    friend bool operator==(const CaseMetadata&, const CaseMetadata&) = default;
};

struct FaultTree {
    CaseMetadata metadata;
    std::size_t top = 0;  ///< index into events
    std::vector<EventNode> events;
    std::vector<GateNode> gates;
    /// Chronological order of the phase roots, by event id.
    std::vector<std::string> phase_order;

    std::optional<std::size_t> find_event(std::string_view id) const;
    std::optional<std::size_t> find_gate(std::string_view id) const;

    friend bool operator==(const FaultTree&, const FaultTree&) = default;
};

}  // namespace ift
