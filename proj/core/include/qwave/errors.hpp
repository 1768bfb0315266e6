#pragma once

#include <stdexcept>
#include <string>

namespace qwave {

/// Invalid user-facing input: bad grid parameters, malformed scenario
/// configs, states that do not fit the box, under-resolved eigenstates.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A mathematical identity, inequality, or conservation law that must hold
/// for exact arithmetic was violated beyond tolerance.  This signals a
/// numerics bug (or an unusable resolution), never bad physics.
struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested quantity is undefined for the given state, e.g. the unwrapped
/// phase (and everything built on it) for a state with nodes.
struct NodalStateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qwave
