#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace hyperset::cli {

inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

// Runs one command line (without the program name). Output goes to `out`,
// diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

// Interactive loop until EOF or `quit`. `prompt` is printed before each line
// when non-empty.
int repl(std::istream& in, std::ostream& out, const std::string& prompt = "> ");

}  // namespace hyperset::cli
