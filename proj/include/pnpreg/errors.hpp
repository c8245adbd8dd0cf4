#pragma once

#include <stdexcept>
#include <string>

namespace pnp {

// Invalid or inconsistent configuration / input data. CLI exit code 2.
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure while iterating (non-finite iterate, inner solve breakdown).
// CLI exit code 3.
class solver_abort : public std::runtime_error {
  public:
    explicit solver_abort(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pnp
