#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ectk {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by the text parsers; `position` is a 0-based offset into the input.
class parse_error : public error {
public:
    parse_error(const std::string& msg, std::size_t position)
        : error(msg + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

} // namespace ectk
