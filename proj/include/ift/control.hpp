#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ift {

enum class ControlFamily { CE, AC };

// Cyber Essentials controls first, then the additional controls. The numeric
// order is the canonical sort order used everywhere (reports, minimal sets).
enum class ControlName : std::uint8_t {
    Firewall,
    SecureConfiguration,
    UserAccessControl,
    MalwareProtection,
    SecurityUpdateManagement,
    Encryption,
    Backup,
    Policy,
    Education,
    LoggingMonitoring,
};

inline constexpr std::size_t kControlCount = 10;

inline constexpr std::array<ControlName, kControlCount> kAllControlNames = {
    ControlName::Firewall,          ControlName::SecureConfiguration,
    ControlName::UserAccessControl, ControlName::MalwareProtection,
    ControlName::SecurityUpdateManagement,
    ControlName::Encryption,        ControlName::Backup,
    ControlName::Policy,            ControlName::Education,
    ControlName::LoggingMonitoring,
};

constexpr ControlFamily family_of(ControlName name) {
    return static_cast<std::uint8_t>(name) < 5 ? ControlFamily::CE : ControlFamily::AC;
}

/// A control as written on an inhibit gate. The declared family must agree with
/// family_of(name); validation reports hand-built values that do not.
struct Control {
    ControlFamily family = ControlFamily::CE;
    ControlName name = ControlName::Firewall;

    static constexpr Control of(ControlName n) { return Control{family_of(n), n}; }

    constexpr std::size_t index() const { return static_cast<std::size_t>(name); }
    constexpr bool consistent() const { return family_of(name) == family; }

    friend constexpr bool operator==(const Control&, const Control&) = default;
    friend constexpr auto operator<=>(const Control& a, const Control& b) {
        return a.name <=> b.name;
    }
};

std::string_view to_string(ControlFamily family);
std::string_view to_string(ControlName name);

/// "CE.Firewall"
std::string qualified_name(const Control& control);

std::optional<ControlFamily> parse_family(std::string_view text);
std::optional<ControlName> parse_control_name(std::string_view text);

/// Parses the dotted `FAMILY.Name` form. Unknown family/name or a family that
/// does not own the name yields nullopt.
std::optional<Control> parse_qualified_control(std::string_view text);

}  // namespace ift
