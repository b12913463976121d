#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperset/errors.hpp"
#include "hyperset/system.hpp"

namespace hyperset {

// One `name = {a, b, ...}` statement.
struct Equation {
    std::string name;
    SourcePos pos;
    std::vector<std::string> members;
    std::vector<SourcePos> member_pos;
};

// Parsed equation text before any variable resolution.
//
// Grammar: statements separated by newlines, semicolons or plain whitespace.
//   stmt  := IDENT '=' '{' [IDENT {',' IDENT}] '}'
//          | 'root' IDENT
// `#` starts a comment running to end of line.
struct EquationText {
    std::vector<Equation> equations;
    std::optional<std::string> root;
    SourcePos root_pos;
};

// Throws SyntaxError on malformed input, including duplicate definitions and
// a repeated root directive.
EquationText parse_equations(std::string_view text);

// Throws UnknownVariable when a member or the root names an undeclared
// variable. `root` overrides the directive.
System to_system(const EquationText& eqs, std::optional<std::string_view> root = std::nullopt);

// parse_equations + to_system. Throws NoRoot if the text has no directive.
System parse_system(std::string_view text);

bool is_identifier(std::string_view s);

}  // namespace hyperset
