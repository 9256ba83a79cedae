#pragma once

#include <stdexcept>
#include <string>

namespace edyson {

enum class ErrorKind {
  InvalidArgument,
  PoleProximity,
  SeriesNonConvergence,
  SingularMatrix,
  NumericalConditioning,
  OverflowWindow,
  EnsembleDegraded,
  QuadratureNonConvergence,
  Io,
};

const char* to_string(ErrorKind kind);

/// Exception carrying a machine-readable error kind.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::SeriesNonConvergence: return "SeriesNonConvergence";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NumericalConditioning: return "NumericalConditioning";
    case ErrorKind::OverflowWindow: return "OverflowWindow";
    case ErrorKind::EnsembleDegraded: return "EnsembleDegraded";
    case ErrorKind::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::InvalidArgument, what);
}

}  // namespace edyson
