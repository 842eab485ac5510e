#pragma once

#include <stdexcept>
#include <string>

namespace renyi {

// Malformed or out-of-domain input: bad pmf files, unknown order tokens,
// inconsistent construction parameters, rejected knife-edge rates.
// The CLI maps this to exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally valid request whose computation exceeds a resource guard
// (type counts, atom expansions, search spaces). The CLI maps this to exit
// code 3.
struct guard_error : std::runtime_error {
    explicit guard_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace renyi
