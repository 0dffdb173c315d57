#pragma once

#include <stdexcept>
#include <string>

namespace pexgaf {

// Argument outside the mathematical domain of a function (x <= 0 for log_gamma,
// non-finite evaluation points, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Parameter combination rejected by a precondition (s <= 1+4beta, p == 1, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Linear statistic or zero list would silently miss zeros.
class CoverageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument-principle count could not keep the contour away from a zero.
class ContourError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Polynomial is identically zero after dropping negligible leading terms.
class DegenerateDegreeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pexgaf
