#pragma once

#include <stdexcept>
#include <string>

namespace simplexmeasure {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An argument lies outside the mathematical domain of the operation.
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(what) {}
};

// Dimensions of arguments are incompatible (a DomainError refinement so the
// CLI can map it to its own exit code).
struct DimensionError : DomainError {
  explicit DimensionError(const std::string& what) : DomainError(what) {}
};

// A scale factor would overflow double precision (|t| beyond exp range).
struct OverflowError : Error {
  explicit OverflowError(const std::string& what) : Error(what) {}
};

// Adaptive integration could not meet the requested tolerance.
struct QuadratureError : Error {
  explicit QuadratureError(const std::string& what) : Error(what) {}
};

// A finite map is not total on its source, or maps outside its target.
struct MapError : Error {
  explicit MapError(const std::string& what) : Error(what) {}
};

// A Radon-Nikodym derivative was requested for a non absolutely continuous pair.
struct AbsoluteContinuityError : Error {
  explicit AbsoluteContinuityError(const std::string& what) : Error(what) {}
};

// A structural precondition (injectivity, bijectivity, morphism) fails.
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

}  // namespace simplexmeasure
