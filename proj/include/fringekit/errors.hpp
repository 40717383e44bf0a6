#pragma once

#include <stdexcept>
#include <string>

namespace fringekit {

/// Invalid physical or geometric configuration (slits outside the grid,
/// non-positive lengths, unsatisfiable imaging condition, ...).
struct GeometryError : std::invalid_argument {
    explicit GeometryError(const std::string& what) : std::invalid_argument(what) {}
};

/// Two sampled objects that must share a grid do not.
struct GridMismatchError : std::invalid_argument {
    explicit GridMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

/// The requested propagation would alias on the current grid: the field has
/// more spectral power outside the distance-dependent safe band than the
/// configured tolerance allows.
struct SamplingViolationError : std::runtime_error {
    explicit SamplingViolationError(const std::string& what) : std::runtime_error(what) {}
};

/// Config-file syntax or validation failure; message carries the offending
/// key and, for syntax errors, the line number.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fringekit
