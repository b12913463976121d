#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperset {

// Base of every domain error raised by the library. The CLI maps these to
// exit status 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 1-based line and column of the offending character.
struct SourcePos {
    std::size_t offset = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, SourcePos pos)
        : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
          pos_(pos) {}

    const SourcePos& pos() const noexcept { return pos_; }

private:
    SourcePos pos_;
};

class UnknownNode : public Error {
public:
    using Error::Error;
};

class UnknownVariable : public Error {
public:
    UnknownVariable(const std::string& name, SourcePos pos)
        : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                ": unknown variable '" + name + "'"),
          name_(name), pos_(pos) {}

    const std::string& name() const noexcept { return name_; }
    const SourcePos& pos() const noexcept { return pos_; }

private:
    std::string name_;
    SourcePos pos_;
};

class NoRoot : public Error {
public:
    NoRoot() : Error("missing 'root' directive") {}
};

class CyclicInput : public Error {
public:
    CyclicInput() : Error("picture contains a cycle; collapse needs an acyclic system") {}
};

class InvalidSystemMap : public Error {
public:
    using Error::Error;
};

class RankTooLarge : public Error {
public:
    using Error::Error;
};

class DuplicateName : public Error {
public:
    explicit DuplicateName(const std::string& name)
        : Error("event name already registered: " + name) {}
};

class EmptyRegistry : public Error {
public:
    EmptyRegistry() : Error("registry has no events") {}
};

class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace hyperset
