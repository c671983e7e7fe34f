#pragma once

#include <stdexcept>
#include <string>

namespace roughflow {

// Bad inputs: invalid parameters, off-grid time queries, derivative order
// requests beyond what a field declares.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// ODE state left the guarded region (1e3 x box diameter).
struct BlowUpError : std::runtime_error {
  explicit BlowUpError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace roughflow
