#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ift/table_io.hpp"
#include "ift/tree.hpp"

namespace ift {

/// Controls deployed organisation-wide. Each control appears at most once and
/// carries an enabled flag; only enabled controls take effect.
class Deployment {
public:
    Deployment() = default;
    Deployment(std::initializer_list<ControlName> names);

    void deploy(ControlName name, bool enabled = true) { entries_[name] = enabled; }
    void remove(ControlName name) { entries_.erase(name); }
    bool active(ControlName name) const;
    std::vector<Control> active_controls() const;
    const std::map<ControlName, bool>& entries() const { return entries_; }

private:
    std::map<ControlName, bool> entries_;
};

/// One `FAMILY.Name` per line; `#` starts a comment; a leading `!` lists the
/// control as deployed but disabled. Throws FormatError on bad lines.
Deployment read_deployment(std::istream& in);

struct AttackOutcome {
    bool top_occurs = true;
    std::vector<std::string> blocked_edges;  ///< source gate ids, document order
    std::optional<int> earliest_blocked_phase;
    std::optional<int> lowest_blocked_level;
};

/// Whether one edge is stopped: any of its inhibit gates satisfied, where a
/// parallel gate needs one deployed control and a sequential gate needs all.
bool edge_blocked(const GuardedEdge& edge, const Deployment& deployment);

AttackOutcome evaluate(const ValidTree& tree, const Deployment& deployment);

struct BlockPoint {
    std::optional<int> phase;  ///< nullopt: only the edge into the top event
    int level = 1;

    friend bool operator==(const BlockPoint&, const BlockPoint&) = default;
};

/// Earliest phase among blocked edges and the lowest level within it.
std::optional<BlockPoint> earliest_block(const ValidTree& tree, const Deployment& deployment);

inline constexpr std::size_t kExhaustiveControlLimit = 16;

class ControlUniverseTooLarge : public std::length_error {
public:
    ControlUniverseTooLarge(std::size_t size);
};

/// Distinct controls appearing on the tree's inhibit gates, canonical order.
std::vector<Control> control_universe(const ValidTree& tree);

/// Every inclusion-minimal control set of at most max_size controls whose
/// deployment prevents the top event, ordered by size then lexicographically.
std::vector<std::vector<Control>> minimal_inhibiting_sets(const ValidTree& tree, std::size_t max_size);

}  // namespace ift
