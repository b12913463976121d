#pragma once

#include <optional>
#include <string_view>

namespace hyperset::fixtures {

// Text of a built-in fixture (omega, escher, citations, naturals,
// strong_registry, weak_registry), or nullopt.
std::optional<std::string_view> lookup(std::string_view name);

}  // namespace hyperset::fixtures
