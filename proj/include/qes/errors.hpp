#pragma once

#include <stdexcept>
#include <string>

namespace qes {

// Root of every error the library raises. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

// Couplings do not satisfy gamma = 4N+3+2eps for the requested index.
class ConstraintViolation : public Error {
 public:
  ConstraintViolation(double required_gamma, double actual_gamma, const std::string& what)
      : Error(what), required(required_gamma), actual(actual_gamma) {}
  double required;
  double actual;
};

// The constraint equation has no admissible root for the unknown coupling.
class NoSolution : public Error {
 public:
  using Error::Error;
};

// Numerical failure: non-convergence, complex roots where real ones were promised,
// near-singular denominators, non-eigenvalue input.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

class ComplexRoots : public SolverFailure {
 public:
  using SolverFailure::SolverFailure;
};

class NearSingularDenominator : public SolverFailure {
 public:
  using SolverFailure::SolverFailure;
};

class NotAnEigenvalue : public SolverFailure {
 public:
  NotAnEigenvalue(double closure_residual, const std::string& what)
      : SolverFailure(what), residual(closure_residual) {}
  double residual;
};

class NonConvergence : public SolverFailure {
 public:
  using SolverFailure::SolverFailure;
};

// The oracle could not match a QES level to a level of the discretized Hamiltonian.
class VerificationMismatch : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qes
