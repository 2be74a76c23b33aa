// errors.hpp: error categories shared across the library and the CLI.

#pragma once

#include <stdexcept>

namespace otto {

// Runtime physics failure: degenerate cycle, unconditionable measurement,
// integrator guard violation. The CLI maps these to exit code 1.
struct PhysicsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad configuration or usage. The CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace otto
