#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ift/tree.hpp"

namespace ift {

struct SourceSpan {
    std::string file;
    int line = 1;    ///< 1-based
    int column = 1;  ///< 1-based

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class ErrorKind { Lexical, Syntactic, Semantic };

std::string_view to_string(ErrorKind kind);

struct ParseError {
    SourceSpan span;
    std::string message;
    ErrorKind kind = ErrorKind::Syntactic;
};

/// `file:line:column: kind error: message`
std::string format_error(const ParseError& error);

struct ParseResult {
    std::optional<ValidTree> tree;
    std::vector<ParseError> errors;

    bool ok() const { return tree.has_value(); }
};

/// Parses an `.ift` document. Never throws on malformed input: every
/// diagnosable problem is returned, and a tree is produced only when the
/// document is free of errors and the model validates.
ParseResult parse(std::string_view text, std::string_view file = "<input>");

/// Canonical text form; parse(serialize(t)) reproduces t exactly.
std::string serialize(const ValidTree& tree);

}  // namespace ift
