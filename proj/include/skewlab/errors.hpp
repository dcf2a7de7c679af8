#pragma once

#include <stdexcept>

namespace skewlab {

// Streaming/DP cost would exceed the configured resource budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed configuration or CLI input.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace skewlab
