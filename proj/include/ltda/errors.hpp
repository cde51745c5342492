#pragma once

#include <stdexcept>
#include <string>

namespace ltda {

/// Thrown when an exact enumeration would exceed its configured budget.
/// Recoverable: callers may fall back to lower bounds.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ltda
