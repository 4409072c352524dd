#pragma once

#include <stdexcept>
#include <string>

namespace layerwr {

/// X- and Z-type checks fail to commute (odd support overlap somewhere).
struct CommutationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An exhaustive search was asked to cover more than its configured limit.
struct ThresholdExceeded : std::runtime_error {
  size_t dimension;
  ThresholdExceeded(const std::string& what, size_t dim)
      : std::runtime_error(what), dimension(dim) {}
};

/// A pair of checks has an odd number of common qubits (non-CSS input).
struct OddOverlap : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A coloring assigns the same color twice where injectivity is required.
struct ColorCollision : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidColoring : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Gluing data failed a chain-map or homotopy identity.
struct CompatibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Recovered embedded complex differs from the input code.
struct MismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotALogical : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReasonablenessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace layerwr
