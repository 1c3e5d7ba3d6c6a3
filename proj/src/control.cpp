#include "ift/control.hpp"

namespace ift {

namespace {

constexpr std::array<std::string_view, kControlCount> kNames = {
    "Firewall",   "SecureConfiguration", "UserAccessControl", "MalwareProtection",
    "SecurityUpdateManagement",
    "Encryption", "Backup",              "Policy",            "Education",
    "LoggingMonitoring",
};

}  // namespace

std::string_view to_string(ControlFamily family) {
    return family == ControlFamily::CE ? "CE" : "AC";
}

std::string_view to_string(ControlName name) {
    return kNames[static_cast<std::size_t>(name)];
}

std::string qualified_name(const Control& control) {
    std::string out(to_string(control.family));
    out += '.';
    out += to_string(control.name);
    return out;
}

std::optional<ControlFamily> parse_family(std::string_view text) {
    if (text == "CE") return ControlFamily::CE;
    if (text == "AC") return ControlFamily::AC;
    return std::nullopt;
}

std::optional<ControlName> parse_control_name(std::string_view text) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == text) return kAllControlNames[i];
    }
    return std::nullopt;
}

std::optional<Control> parse_qualified_control(std::string_view text) {
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) return std::nullopt;
    auto family = parse_family(text.substr(0, dot));
    auto name = parse_control_name(text.substr(dot + 1));
    if (!family || !name || family_of(*name) != *family) return std::nullopt;
    return Control{*family, *name};
}

}  // namespace ift
