#pragma once

#include <stdexcept>
#include <string>

namespace bipinf {

/// Bad user input: malformed files, unknown labels, invalid parameters.
/// The CLI maps this to exit code 1.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Broken internal invariant. The CLI maps this to exit code 2.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace bipinf
