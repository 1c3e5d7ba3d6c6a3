#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ift/analysis.hpp"

namespace ift {

struct SynthesisProfile {
    CaseAnalysisRow target;  ///< case id, category and every count to reproduce
    std::uint64_t seed = 0;
    std::optional<std::string> variant;
};

class UnsatisfiableProfile : public std::invalid_argument {
public:
    explicit UnsatisfiableProfile(std::string constraint);
    const std::string& constraint() const { return constraint_; }

private:
    std::string constraint_;
};

/// Names of every constraint the target violates; empty when a tree with
/// exactly these counts exists.
std::vector<std::string> profile_violations(const CaseAnalysisRow& target);

/// Builds a valid tree whose case_row equals profile.target. Same profile and
/// seed give the same tree. Throws UnsatisfiableProfile naming the first
/// violated constraint.
ValidTree synthesize_tree(const SynthesisProfile& profile);

}  // namespace ift
