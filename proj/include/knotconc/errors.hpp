#pragma once

#include <stdexcept>
#include <string>

namespace knotconc {

// Malformed input: schema violations, parse failures, unknown references.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured cap (degree, derived-series depth, support size) was exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input is well formed but lies outside what the algorithms handle.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace knotconc
