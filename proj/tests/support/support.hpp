#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ift/analysis.hpp"
#include "ift/tree.hpp"

namespace ift {

// Readable gtest output for rows.
void PrintTo(const CaseAnalysisRow& row, std::ostream* os);

}  // namespace ift

namespace ift::testing {

std::string fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);
ValidTree load_fixture_tree(const std::string& name);
std::vector<CaseAnalysisRow> published_rows();

struct GenOptions {
    int max_depth = 4;
    int guard_percent = 55;
    int sequential_percent = 20;
    int condition_percent = 10;
    int nested_gate_percent = 15;
    bool odd_labels = true;  ///< quotes, backslashes, newlines, non-ASCII
};

/// A random structurally valid tree (not yet canonical).
FaultTree random_fault_tree(std::mt19937_64& rng, const GenOptions& options = {});
ValidTree random_tree(std::uint64_t seed, const GenOptions& options = {});

// Oracles, written directly from the definitions and independent of the
// library's own sweeps.

/// Level of each guarded gate: 1 + the most guarded gates met on any
/// downward path strictly below it.
std::map<std::string, int> oracle_levels(const FaultTree& tree);

/// Phase of each guarded gate, found top-down from the phase roots.
std::map<std::string, std::optional<int>> oracle_phases(const FaultTree& tree);

CaseAnalysisRow oracle_row(const FaultTree& tree);

/// Whether the top event occurs when `deployed` controls are in place.
bool oracle_top_occurs(const FaultTree& tree, const std::set<ControlName>& deployed);

/// All inclusion-minimal blocking sets over the tree's controls, by size then
/// lexicographic order, found by enumerating every subset.
std::vector<std::vector<Control>> oracle_minimal_sets(const ValidTree& tree, std::size_t max_size);

/// Random per-case row that some tree can realise (built by counting a random tree).
CaseAnalysisRow random_satisfiable_row(std::uint64_t seed);

}  // namespace ift::testing
