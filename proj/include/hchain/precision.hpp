#pragma once

// Scalar types used by the numerical core.
//
// Everything that has to resolve symplectic eigenvalues close to 1/2 is
// templated on the scalar type and instantiated for `double` and for `Mp`,
// an MPFR-backed float whose precision is chosen at run time.

#include <boost/multiprecision/mpfr.hpp>
#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <mutex>

namespace hchain {

using Mp = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                         boost::multiprecision::et_off>;

template <class Real>
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Number of mantissa bits of `double`; passing it as a precision request
/// selects the double-precision path.
inline constexpr unsigned kDoubleBits = 53;

/// Current working precision of `Mp` in bits.
unsigned mp_precision_bits();

/// Sets the process-wide `Mp` precision for the lifetime of the guard.
///
/// MPFR default precision is a global in Boost.Multiprecision, so guards
/// serialize on a mutex: two threads cannot run `Mp` work at different
/// precisions concurrently. Sweeps pick one precision for all of their points.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  std::unique_lock<std::recursive_mutex> lock_;
  unsigned saved_digits10_;
};

template <class Real>
inline double to_double(const Real& x) {
  return static_cast<double>(x);
}

template <class Real>
inline Real machine_epsilon() {
  if constexpr (std::is_same_v<Real, double>) {
    return std::numeric_limits<double>::epsilon();
  } else {
    return boost::multiprecision::ldexp(Real(1), 1 - static_cast<int>(mp_precision_bits()));
  }
}

template <class Real>
inline Real pi_v() {
  if constexpr (std::is_same_v<Real, double>) {
    return 3.14159265358979323846264338327950288;
  } else {
    return boost::multiprecision::acos(Real(-1));
  }
}

}  // namespace hchain

namespace Eigen {

// Boost 1.74 ships an Eigen adaptor without infinity()/quiet_NaN(), which
// Eigen 3.4 needs for hypot inside the tridiagonal QR step.
template <>
struct NumTraits<hchain::Mp> : GenericNumTraits<hchain::Mp> {
  using Real = hchain::Mp;
  using NonInteger = hchain::Mp;
  using Literal = hchain::Mp;
  using Nested = hchain::Mp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static Real epsilon() { return hchain::machine_epsilon<Real>(); }
  static Real dummy_precision() { return 1000 * epsilon(); }
  static Real highest() { return (std::numeric_limits<Real>::max)(); }
  static Real lowest() { return std::numeric_limits<Real>::lowest(); }
  static Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static int digits10() { return static_cast<int>(Real::default_precision()); }
};

}  // namespace Eigen
