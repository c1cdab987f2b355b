#pragma once

#include <stdexcept>
#include <string>

namespace semio {

/// Bad or inconsistent input data (malformed files, unresolvable ids,
/// insufficient observations). Maps to process exit code 3.
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure (divergence, non-convergence, overflow).
/// Maps to process exit code 4.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace semio
