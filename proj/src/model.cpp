#include "ift/model.hpp"

#include <array>

namespace ift {

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::Basic: return "basic";
        case EventKind::Intermediate: return "intermediate";
        case EventKind::Undeveloped: return "undeveloped";
        case EventKind::Conditioning: return "conditioning";
    }
    return "?";
}

std::string_view to_string(GateKind kind) { return kind == GateKind::And ? "and" : "or"; }

std::string_view to_string(Composition composition) {
    return composition == Composition::Parallel ? "parallel" : "sequential";
}

namespace {
constexpr std::array<std::string_view, 4> kCategoryNames = {
    "Ransomware", "Phishing", "MalwareExecution", "CVExploitation"};
}

std::string_view to_string(Category category) {
    return kCategoryNames[static_cast<std::size_t>(category)];
}

std::optional<Category> parse_category(std::string_view text) {
    for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
        if (kCategoryNames[i] == text) return static_cast<Category>(i);
    }
    return std::nullopt;
}

std::optional<std::size_t> FaultTree::find_event(std::string_view id) const {
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (events[i].id == id) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> FaultTree::find_gate(std::string_view id) const {
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (gates[i].id == id) return i;
    }
    return std::nullopt;
}

}  // namespace ift
