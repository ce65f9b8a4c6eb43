#include "hchain/continuum.hpp"

#include "hchain/special_functions.hpp"

#include <cmath>
#include <string>

namespace hchain {
namespace {

constexpr double kPi = special::kPi;

void check_point(double x, double mu) {
  if (!(mu > 0.0)) throw DomainError("mass must be positive");
  if (x == 0.0) throw DomainError("continuum correlators are singular at x = 0");
}

template <class F>
double image_sum(double x, double mu, double L, F&& f) {
  if (!(L > 0.0)) throw DomainError("circumference must be positive");
  double sum = f(x);
  // Images decay like exp(-mu |x + jL|); stop once they are negligible.
  for (long j = 1; j < 100000; ++j) {
    const double a = f(x + static_cast<double>(j) * L);
    const double b = f(x - static_cast<double>(j) * L);
    sum += a + b;
    if (mu * (static_cast<double>(j) * L - std::abs(x)) > 745.0 ||
        std::abs(a) + std::abs(b) < 1e-17 * std::abs(sum)) {
      break;
    }
  }
  return sum;
}

}  // namespace

double g_cont(double x, double mu) {
  check_point(x, mu);
  return special::bessel_k0(mu * std::abs(x)) / (2.0 * kPi);
}

double h_cont(double x, double mu) {
  check_point(x, mu);
  const double ax = std::abs(x);
  return -mu / (2.0 * kPi * ax) * special::bessel_k1(mu * ax);
}

double g_cont_periodic(double x, double mu, double L) {
  return image_sum(x, mu, L, [mu](double y) { return g_cont(y, mu); });
}

double h_cont_periodic(double x, double mu, double L) {
  return image_sum(x, mu, L, [mu](double y) { return h_cont(y, mu); });
}

double g_cont_small(double x, double mu) {
  check_point(x, mu);
  return -(std::log(0.5 * mu * std::abs(x)) + special::kEulerGamma) / (2.0 * kPi);
}

double g_cont_large(double x, double mu) {
  check_point(x, mu);
  const double t = mu * std::abs(x);
  return std::exp(-t) / (2.0 * std::sqrt(2.0 * kPi * t));
}

double h_cont_small(double x) {
  if (x == 0.0) throw DomainError("continuum correlators are singular at x = 0");
  return -1.0 / (2.0 * kPi * x * x);
}

double h_cont_large(double x, double mu) {
  check_point(x, mu);
  const double ax = std::abs(x);
  return -std::sqrt(mu / (8.0 * kPi * ax * ax * ax)) * std::exp(-mu * ax);
}

Discretization discretize(const ContinuumSpec& cont) {
  if (!(cont.mu > 0.0)) throw DomainError("mass must be positive");
  if (cont.infinite() || !(cont.L > 0.0)) throw DomainError("discretization needs a finite circumference");
  if (cont.n < 2) throw DomainError("need at least 2 lattice sites");
  const double inv_a = static_cast<double>(cont.n) / cont.L;
  const double lambda = std::sqrt(2.0 * inv_a * inv_a + cont.mu * cont.mu);
  const double r = cont.mu / lambda;
  return Discretization{ChainSpec::from_one_minus_alpha(cont.n, r * r), lambda, lambda, 1.0 / inv_a};
}

CorrespondencePoint correspondence_check(const ContinuumSpec& cont, double x) {
  const Discretization d = discretize(cont);
  CorrespondencePoint p;
  p.x = x;
  p.n_sites = cont.n;
  const double pos = std::abs(x) / d.spacing;
  p.index = std::lround(pos);
  p.aligned = std::abs(pos - static_cast<double>(p.index)) < 1e-9;
  if (p.index == 0 || 2 * p.index > cont.n) {
    throw DomainError("separation outside (0, L/2]: x = " + std::to_string(x));
  }
  const auto [g, h] = finite_correlation(d.chain, p.index);
  const double inv_a = 1.0 / d.spacing;
  p.g_discrete = g / std::sqrt(2.0);
  p.h_discrete = std::sqrt(2.0) * inv_a * inv_a * h;
  p.g_continuum = g_cont_periodic(x, cont.mu, cont.L);
  p.h_continuum = h_cont_periodic(x, cont.mu, cont.L);
  p.rel_err_g = std::abs(p.g_discrete - p.g_continuum) / std::abs(p.g_continuum);
  p.rel_err_h = std::abs(p.h_discrete - p.h_continuum) / std::abs(p.h_continuum);
  return p;
}

}  // namespace hchain
