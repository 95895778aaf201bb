// errors.hpp — Exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace qslb {

// A numerical procedure failed to converge or produced non-finite values
// (root brackets exhausted, quadrature budget exceeded, unstable stepping).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// The QSL time is a 0/0 expression for trajectories with no evolution
// (final population 1 and zero action integral).
class undefined_qsl_error : public std::runtime_error {
public:
    explicit undefined_qsl_error(const std::string& what) : std::runtime_error(what) {}
};

// Run-configuration parsing/validation failure (carries field diagnostics).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qslb
