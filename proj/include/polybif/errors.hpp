#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polybif {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message)
        : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// raised when a cross-checked internal invariant fails; indicates a bug,
// not a user error
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& message)
        : std::logic_error("internal inconsistency: " + message) {}
};

} // namespace polybif
