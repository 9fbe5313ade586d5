#pragma once

#include <stdexcept>
#include <string>

namespace gbl {

// Library-wide exception for precondition violations and malformed input.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gbl
