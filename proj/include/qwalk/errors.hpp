// Error taxonomy shared by the library and the CLI.
//
// config_error   — malformed configuration / user input (CLI exit code 2)
// numerical_error— solver or invariant failure at runtime   (CLI exit code 3)
//
// Library preconditions throw std::invalid_argument, which the CLI also
// maps to exit code 2 (bad input), keeping the library free of CLI concerns.
#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qwalk
