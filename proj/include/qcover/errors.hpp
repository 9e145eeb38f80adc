#pragma once

#include <stdexcept>
#include <string>

namespace qcover {

// Base class for all failures this library reports.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed values, dimension/field mismatches, parse failures and
// violated operation preconditions. Maps to CLI exit code 2.
struct input_error : error {
    using error::error;
};

// An enumeration would exceed the configured size bound. Exit code 3.
struct resource_limit_error : error {
    using error::error;
};

}  // namespace qcover
