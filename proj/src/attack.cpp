#include "ift/attack.hpp"

#include <array>
#include <cctype>
#include <utility>

namespace ift {

namespace {

bool digits(std::string_view s) {
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

constexpr std::array<std::pair<std::string_view, std::string_view>, 24> kTechniques = {{
    {"T1003", "OS Credential Dumping"},
    {"T1016", "System Network Configuration Discovery"},
    {"T1018", "Remote System Discovery"},
    {"T1021.001", "Remote Desktop Protocol"},
    {"T1021.002", "SMB/Windows Admin Shares"},
    {"T1053.005", "Scheduled Task"},
    {"T1059.001", "PowerShell"},
    {"T1059.003", "Windows Command Shell"},
    {"T1078", "Valid Accounts"},
    {"T1110", "Brute Force"},
    {"T1133", "External Remote Services"},
    {"T1136.001", "Local Account"},
    {"T1190", "Exploit Public-Facing Application"},
    {"T1203", "Exploitation for Client Execution"},
    {"T1204.001", "Malicious Link"},
    {"T1204.002", "Malicious File"},
    {"T1486", "Data Encrypted for Impact"},
    {"T1489", "Service Stop"},
    {"T1490", "Inhibit System Recovery"},
    {"T1562.001", "Disable or Modify Tools"},
    {"T1566.001", "Spearphishing Attachment"},
    {"T1566.002", "Spearphishing Link"},
    {"T1569.002", "Service Execution"},
    {"T1570", "Lateral Tool Transfer"},
}};

}  // namespace

bool is_valid_technique_id(std::string_view tag) {
    if (tag.size() != 5 && tag.size() != 9) return false;
    if (tag[0] != 'T' || !digits(tag.substr(1, 4))) return false;
    if (tag.size() == 5) return true;
    return tag[5] == '.' && digits(tag.substr(6, 3));
}

std::optional<std::string_view> technique_name(std::string_view tag) {
    for (const auto& [id, name] : kTechniques) {
        if (id == tag) return name;
    }
    return std::nullopt;
}

}  // namespace ift
