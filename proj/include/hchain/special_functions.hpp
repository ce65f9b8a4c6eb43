#pragma once

#include <stdexcept>
#include <string>

namespace hchain {

/// Thrown when a series or iteration does not reach its tolerance within
/// the allowed number of terms.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an argument is outside the domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace special {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Term budget and relative tolerance for the hypergeometric series.
struct SeriesControl {
  long max_terms = 1'000'000;
  double tolerance = 1e-12;
};

/// Digamma function psi(x) for real x (poles at non-positive integers).
double digamma(double x);

/// log|Gamma(x)| together with the sign of Gamma(x).
double log_abs_gamma(double x, int* sign);

/// Generalized binomial coefficient C(l - 1/2, l) = Gamma(l+1/2)/(Gamma(l+1) Gamma(1/2)).
double binomial_half(long l);

/// Gauss hypergeometric 2F1(a, b; c; x) by direct power series, |x| < 1.
double hyp2f1_series(double a, double b, double c, double x, const SeriesControl& ctl = {});

/// 2F1(a, b; a+b+m; x) for m in {0, 2} near x = 1 via the logarithmic
/// connection formula. `one_minus_x` is passed separately so callers can
/// supply it without cancellation.
double hyp2f1_log_connection(double a, double b, int m, double one_minus_x,
                             const SeriesControl& ctl = {});

/// Dispatching evaluator: power series for x <= switch_at, logarithmic
/// connection formula above (requires c - a - b to be 0 or 2).
double hyp2f1(double a, double b, double c, double x, double one_minus_x,
              double switch_at = 0.99, const SeriesControl& ctl = {});

/// Modified Bessel functions of the second kind, orders 0 and 1, x > 0.
double bessel_k0(double x);
double bessel_k1(double x);

}  // namespace special
}  // namespace hchain
