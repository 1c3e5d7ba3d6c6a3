#pragma once

#include <string>

#include "ift/tree.hpp"

namespace ift {

/// Graphviz `digraph` rendering. One node per event and gate: boxes for
/// intermediate events, circles for basic, diamonds for undeveloped, dashed
/// ellipses for conditioning events, houses for AND and inverted triangles for
/// OR. Inhibit gates decorate the gate -> event edge (tee arrowhead, control
/// label; sequential chains joined by arrows, parallel sets by "||").
std::string export_dot(const ValidTree& tree);

}  // namespace ift
