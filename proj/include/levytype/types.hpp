#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace levytype {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

//! Base class for every error raised by the library.
//!
//! The `code()` string is the stable machine-readable name (e.g.
//! "QuadratureDivergence"); the CLI echoes it in its JSON error payloads.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

//! Invalid parameters (bad rate, malformed triplet, non-PSD Q, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

//! A numerical or statistical precondition did not hold at run time.
class PreconditionFailed : public Error {
public:
  using Error::Error;
};

#define LEVYTYPE_DEFINE_ERROR(Name, Base)                                     \
  class Name : public Base {                                                  \
  public:                                                                     \
    explicit Name(const std::string& what) : Base(#Name, what) {}             \
  }

LEVYTYPE_DEFINE_ERROR(DimensionMismatch, InvalidArgument);
LEVYTYPE_DEFINE_ERROR(InvalidTriplet, InvalidArgument);
LEVYTYPE_DEFINE_ERROR(InvalidAlpha, InvalidArgument);
LEVYTYPE_DEFINE_ERROR(InvalidRate, InvalidArgument);
LEVYTYPE_DEFINE_ERROR(RegionTouchesOrigin, InvalidArgument);
LEVYTYPE_DEFINE_ERROR(EmptyEnsemble, InvalidArgument);
LEVYTYPE_DEFINE_ERROR(UnsupportedF, InvalidArgument);
LEVYTYPE_DEFINE_ERROR(OutOfSemiring, InvalidArgument);
LEVYTYPE_DEFINE_ERROR(NonAdaptedCoefficient, InvalidArgument);
LEVYTYPE_DEFINE_ERROR(LipschitzViolation, InvalidArgument);
LEVYTYPE_DEFINE_ERROR(QuadratureDivergence, PreconditionFailed);
LEVYTYPE_DEFINE_ERROR(NoConvergence, PreconditionFailed);
LEVYTYPE_DEFINE_ERROR(MassOverflow, PreconditionFailed);
LEVYTYPE_DEFINE_ERROR(TailNotResolved, PreconditionFailed);
LEVYTYPE_DEFINE_ERROR(NotSquareIntegrable, PreconditionFailed);
LEVYTYPE_DEFINE_ERROR(Blowup, PreconditionFailed);
LEVYTYPE_DEFINE_ERROR(ExitDominates, PreconditionFailed);
LEVYTYPE_DEFINE_ERROR(Censored, PreconditionFailed);
LEVYTYPE_DEFINE_ERROR(SlopeUnresolved, PreconditionFailed);

#undef LEVYTYPE_DEFINE_ERROR

inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                            " vs " + std::to_string(b));
  }
}

} // namespace levytype
