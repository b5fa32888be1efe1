#pragma once

#include <stdexcept>
#include <string>

namespace relyap {

/// A queried time lies outside the integrated trajectory (integrate further).
struct CoverageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An iterative solver did not reach its tolerance within its iteration cap.
struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The step-equation matrix was singular or too ill-conditioned to trust.
struct AssemblyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Non-finite data or a failed dense factorization/eigensolution.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid experiment configuration (maps to CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace relyap
