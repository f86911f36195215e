#pragma once

#include <stdexcept>
#include <string>

namespace cira {

/// Malformed structured input. `position` is a JSON pointer, a byte offset,
/// or a line number, depending on the reader that raised it.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string position, const std::string& what)
        : std::runtime_error(what + " (at " + position + ")"), position_(std::move(position)) {}

    const std::string& position() const { return position_; }

private:
    std::string position_;
};

}  // namespace cira
