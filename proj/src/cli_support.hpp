#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperset/hyperset.hpp"
#include "hyperset/system.hpp"

namespace hyperset::cli {

// FILE or FILE:VAR. FILE may name a built-in fixture as "@name".
struct Reference {
    std::string file;
    std::optional<std::string> var;
};

Reference parse_reference(std::string_view arg);

// Reads a file or a built-in fixture. Throws hyperset::Error when neither exists.
std::string load_text(const std::string& file);

// The picture a reference designates exactly as written: the variable as
// root, or the file's root directive when no variable is given.
System reference_picture(const Reference& ref);

// The set a reference designates.
HyperSet reference_value(const Reference& ref);

std::string join_sets(const std::vector<HyperSet>& sets);

}  // namespace hyperset::cli
