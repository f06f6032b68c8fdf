#pragma once

#include <stdexcept>
#include <string>

namespace tvo {

// Typed failure kinds surfaced by library operations.  The CLI maps these to
// exit codes; tests match on the kind.
enum class ErrorKind {
  NoPositiveSolution,  // quantum dimensions: no positive d with d_i d_j = sum N d
  MissingEntry,        // an admissible F-symbol block is entirely absent
  MissingFBlock,       // evaluation touched an F block that is absent
  TypeMismatch,        // expression source/target words do not compose
  DimensionMismatch,   // tube decomposition left unexplained residual mass
  DegenerateSplit,     // central idempotent refinement failed after retries
  NotDiagonal,         // requested action is not diagonal in the chosen basis
  VacuumNotUnique,     // vacuum detection found zero or several candidates
  AxiomFailure,        // modular-data axiom violated beyond tolerance
  NonIntegral,         // Verlinde coefficients are not close to integers
  SchemaError,         // malformed input file
  BadInput,            // invalid arguments (e.g. continued fraction of p<=q)
  EmptyChain,          // chain presentation with no coefficients
  BadCongruence,       // closed form applied to p in the wrong residue class
  MissingFixture,      // a comparison fixture file is absent
  Usage,               // bad command line
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NoPositiveSolution: return "NoPositiveSolution";
    case ErrorKind::MissingEntry: return "MissingEntry";
    case ErrorKind::MissingFBlock: return "MissingFBlock";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegenerateSplit: return "DegenerateSplit";
    case ErrorKind::NotDiagonal: return "NotDiagonal";
    case ErrorKind::VacuumNotUnique: return "VacuumNotUnique";
    case ErrorKind::AxiomFailure: return "AxiomFailure";
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::EmptyChain: return "EmptyChain";
    case ErrorKind::BadCongruence: return "BadCongruence";
    case ErrorKind::MissingFixture: return "MissingFixture";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tvo
