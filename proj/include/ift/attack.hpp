#pragma once

#include <optional>
#include <string_view>

namespace ift {

/// ATT&CK technique id shape: `T####` with optional `.###` sub-technique.
/// Existence in the live catalog is not checked.
bool is_valid_technique_id(std::string_view tag);

/// Name from a small bundled technique list, if the id is in it.
std::optional<std::string_view> technique_name(std::string_view tag);

}  // namespace ift
