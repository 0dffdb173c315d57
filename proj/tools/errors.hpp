#pragma once

#include <stdexcept>
#include <string>

namespace pexgaf::cli {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A check command whose property did not hold.
class CheckFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pexgaf::cli
