#pragma once

#include <stdexcept>
#include <string>

namespace starcolor {

// Bad user input: malformed files, out-of-range parameters, unknown flags.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured budget (size, node count, state count) was exceeded.
// Distinct from "infeasible": the question was not answered.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal consistency check failed. Always a bug, never user error.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace starcolor
