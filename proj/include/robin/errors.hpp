#pragma once

#include <stdexcept>
#include <string>

namespace robin {

// Direction is not strictly interior to the cone cross-section.
struct NotInteriorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The planar section P_theta is unbounded for the given direction.
struct UnboundedSectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OptimizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularZError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InconsistentGradientError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace robin
