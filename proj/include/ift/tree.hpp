#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ift/model.hpp"

namespace ift {

enum class IssueCode {
    DanglingReference,
    DuplicateId,
    TopMissing,
    RootNotIntermediate,
    LeafHasChildren,
    IntermediateWithoutCause,
    GateArity,
    GuardDestinationNotIntermediate,
    EmptyAnnotation,
    SequentialTooShort,
    ControlFamilyMismatch,
    ConditionUnknown,
    ConditionNotConditioning,
    ConditioningInCausalTree,
    MultipleParents,
    Cycle,
    Unreachable,
    InvalidTechnique,
    PhaseUnknown,
    PhaseNotRoot,
    PhaseDuplicate,
    PhaseMissing,
};

std::string_view to_string(IssueCode code);

struct ValidationIssue {
    IssueCode code;
    std::string message;
    /// Id of the offending event/gate (or phase entry); empty for tree-wide issues.
    std::string subject;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }
    bool has(IssueCode code) const;
};

/// Checks every notation rule; violations are returned as data.
ValidationReport validate_tree(const FaultTree& tree);

class InvalidTreeError : public std::runtime_error {
public:
    explicit InvalidTreeError(ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// A (gate -> intermediate event) link carrying at least one inhibit gate.
/// All inhibit gates on the same link are merged here.
struct GuardedEdge {
    std::string source;       ///< gate id
    std::string destination;  ///< intermediate event id
    std::vector<InhibitAnnotation> annotations;
    int level = 1;
    /// Phase index (1-based); nullopt for the edge into the top event.
    std::optional<int> phase;

    std::size_t source_index = 0;       ///< into FaultTree::gates
    std::size_t destination_index = 0;  ///< into FaultTree::events

    /// Distinct controls over all merged annotations, first-appearance order.
    std::vector<Control> controls() const;

    friend bool operator==(const GuardedEdge&, const GuardedEdge&) = default;
};

/// A fault tree that passed validate_tree, stored in canonical (pre-order)
/// layout together with its guarded edges, levels and phases. Only obtainable
/// through from(), so every analysis taking a ValidTree runs on valid input.
class ValidTree {
public:
    /// Throws InvalidTreeError when validation reports any issue.
    static ValidTree from(FaultTree tree);

    const FaultTree& tree() const { return tree_; }
    const std::vector<GuardedEdge>& edges() const { return edges_; }

    const GuardedEdge* find_edge(std::string_view source_gate) const;
    /// Phase of a gate, nullopt when the gate sits above every phase root.
    std::optional<int> gate_phase(std::size_t gate) const { return gate_phase_[gate]; }
    int phase_count() const { return static_cast<int>(tree_.phase_order.size()); }

    friend bool operator==(const ValidTree& a, const ValidTree& b) { return a.tree_ == b.tree_; }

private:
    ValidTree() = default;

    FaultTree tree_;
    std::vector<GuardedEdge> edges_;
    std::vector<std::optional<int>> gate_phase_;
};

/// Canonical pre-order layout of a structurally valid tree.
FaultTree canonicalize(const FaultTree& tree);

/// Intermediate events reachable from the top event's gate through gates only.
std::vector<std::size_t> phase_roots(const FaultTree& tree);

const std::vector<GuardedEdge>& guarded_edges(const ValidTree& tree);

/// Throws std::invalid_argument when the edge does not belong to the tree.
int edge_level(const ValidTree& tree, const GuardedEdge& edge);
std::optional<int> edge_phase(const ValidTree& tree, const GuardedEdge& edge);

}  // namespace ift
