#include "hchain/analytics.hpp"

#include "hchain/special_functions.hpp"

#include <cmath>
#include <string>

namespace hchain {
namespace {

constexpr double kPi = special::kPi;

void check_depth(long depth) {
  if (depth < 1) throw DomainError("mode depth must be >= 1");
}

double weak_ratio_power(long depth, double z) {
  if (!(z > 0.0 && z < 1.0)) throw DomainError("z must lie in (0, 1)");
  return std::pow(z / 4.0, 2.0 * (2.0 * static_cast<double>(depth) - 1.0));
}

// ln((1+2x)/(1-2x)).
double edge_log(double x) { return std::log1p(2.0 * x) - std::log1p(-2.0 * x); }

}  // namespace

double single_osc_lambda(const ChainSpec& spec, Regime regime) {
  const RegimeScales s = regime_scales(spec);
  switch (regime) {
    case Regime::I:
      return 0.5 + spec.z() * spec.z() / 8.0;
    case Regime::II:
      return std::sqrt(std::log(4.0 * s.N_t)) / kPi;
    case Regime::III:
      return std::sqrt(s.N_t / (2.0 * kPi * static_cast<double>(spec.n())));
  }
  return 0.5;
}

double single_osc_entropy(const ChainSpec& spec, Regime regime) {
  const RegimeScales s = regime_scales(spec);
  switch (regime) {
    case Regime::I: {
      const double e = spec.z() * spec.z() / 8.0;
      return e * (1.0 - std::log(e));
    }
    case Regime::II:
      return 1.0 + 0.5 * std::log(std::log(4.0 * s.N_t) / (kPi * kPi));
    case Regime::III:
      return 1.0 + 0.5 * std::log(s.N_t / (2.0 * kPi * static_cast<double>(spec.n())));
  }
  return 0.0;
}

double single_osc_entropy(const ChainSpec& spec, const RegimeThresholds& thresholds) {
  return single_osc_entropy(spec, classify_regime(spec, thresholds));
}

double weak_mode_lambda(long depth, double z) {
  check_depth(depth);
  return 0.5 + weak_ratio_power(depth, z);
}

double weak_mode_entropy(long depth, double z) {
  check_depth(depth);
  const double p = weak_ratio_power(depth, z);
  return p * (1.0 - 2.0 * (2.0 * static_cast<double>(depth) - 1.0) * std::log(z / 4.0));
}

double wedge_kappa_sq(long depth, long n_b, const CorrelationTable& table, int parity) {
  check_depth(depth);
  if (parity != 1 && parity != -1) throw DomainError("parity must be +1 or -1");
  const long inner = 2 * depth - 1;
  const double sgn = static_cast<double>(parity);
  return -(table.h_at(n_b) + sgn * table.h_at(inner)) * (table.g_at(n_b) + sgn * table.g_at(inner));
}

double wedge_lambda(long depth, long n_b, const CorrelationTable& table, int parity) {
  return std::sqrt(0.25 + wedge_kappa_sq(depth, n_b, table, parity));
}

double collective_h_chi(long n_b) {
  if (n_b < 1) throw DomainError("N_b must be >= 1");
  const double nb = static_cast<double>(n_b);
  return (special::digamma(nb + 0.5) + std::log(4.0) + special::kEulerGamma) /
         (std::sqrt(2.0) * nb * kPi);
}

double collective_g_chi(const CorrelationTable& table, long n_b) {
  if (n_b < 1) throw DomainError("N_b must be >= 1");
  double s = 0.0;
  for (long i = 0; i < n_b; ++i) {
    for (long j = 0; j < n_b; ++j) s += table.g_at(i - j);
  }
  return s / static_cast<double>(n_b);
}

double collective_lambda(long n_b, double g0) {
  return std::sqrt(static_cast<double>(n_b) * g0 * collective_h_chi(n_b));
}

double kappa_sq_of_omega(double omega) {
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  const double s = std::sinh(kPi * omega);
  return 0.25 / (s * s);
}

double lambda_of_omega(double omega) {
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  return 0.5 / std::tanh(kPi * omega);
}

double quantization_function(double f, double zeta) {
  if (!(zeta > 0.0 && zeta < 1.0)) throw DomainError("zeta must lie in (0, 1)");
  if (!(f > 0.0) || zeta * f > 1.0) throw DomainError("f must lie in (0, 1/zeta]");
  const double s = std::sqrt(std::max(0.0, 1.0 - zeta * f));
  // (1+s)/(1-s) written as (1+s)^2/(zeta f) to avoid cancellation as f -> 0.
  return 1.0 - s + 0.5 * f * std::log((1.0 + s) * (1.0 + s) / (zeta * f));
}

double solve_quantization(double mu, double zeta, double tolerance) {
  if (!(zeta > 0.0 && zeta < 1.0)) throw DomainError("zeta must lie in (0, 1)");
  if (!(mu > 0.0) || mu > 1.0) {
    throw DomainError("no root of the quantization condition for mu = " + std::to_string(mu));
  }
  double lo = 0.0;
  double hi = 1.0 / zeta;
  for (int it = 0; it < 400 && hi - lo > tolerance * std::max(1e-3, lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (quantization_function(mid, zeta) < mu) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double small_mu_f(double mu) {
  const double fmax = std::exp(-1.0);
  if (!(mu > 0.0) || mu > 0.5 * fmax * (1.0 + 1e-15)) {
    throw DomainError("f ln f = -2 mu has no small-f root for mu = " + std::to_string(mu));
  }
  // f ln f decreases on (0, 1/e].
  double lo = 0.0;
  double hi = fmax;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid * std::log(mid) > -2.0 * mu) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ScalingPoint quantize_residual(long m, const ResidualModel& model) {
  if (m < 2 || m > model.n_b) {
    throw DomainError("mode index must satisfy 2 <= m <= N_b, got m=" + std::to_string(m));
  }
  ScalingPoint p;
  p.mu_scaled = static_cast<double>(m) / static_cast<double>(model.n_b);
  p.f = solve_quantization(p.mu_scaled, model.zeta);
  p.omega = kPi * static_cast<double>(model.n_b) * p.f / 4.0;
  p.turning_point = 0.5 * std::sqrt(std::max(0.0, 1.0 - model.zeta * p.f));
  p.ln_E_over_Nb = -0.5 * kPi * kPi * p.f;
  return p;
}

double residual_scaling_prediction(long m, long n_b, double zeta) {
  return quantize_residual(m, ResidualModel{zeta, n_b}).ln_E_over_Nb;
}

double outer_mode_omega(long m, long n_b) {
  if (m < 1 || n_b < 2) throw DomainError("need m >= 1 and N_b >= 2");
  return static_cast<double>(m) * kPi / (2.0 * std::log(static_cast<double>(n_b)));
}

double outer_mode_entropy_estimate(long m, long n_b) {
  if (m < 1 || n_b < 2) throw DomainError("need m >= 1 and N_b >= 2");
  return -std::log(kPi * kPi * static_cast<double>(m) / std::log(static_cast<double>(n_b)));
}

double asymptotic_residual_entropy(long n_b) {
  if (n_b < 1) throw DomainError("N_b must be >= 1");
  return std::log(static_cast<double>(n_b)) / 3.0;
}

KernelValues continuum_kernel(double x, double y, double g0, long n_b) {
  if (!(std::abs(x) < 0.5 && std::abs(y) < 0.5)) throw DomainError("kernel needs |x|, |y| < 1/2");
  const double pi2 = kPi * kPi;
  const double qx = 0.25 - x * x;
  const double qy = 0.25 - y * y;
  KernelValues k;
  k.cs = -std::sqrt(2.0) / (4.0 * kPi * qy) *
         (g0 - std::log(static_cast<double>(n_b) * std::sqrt(qx)) / (std::sqrt(2.0) * kPi));
  k.ca = x / (4.0 * pi2 * qx) * edge_log(y);
  if (std::abs(x - y) < 1e-6) {
    const double m = 0.5 * (x + y);
    k.r = 1.0 / (4.0 * pi2) * 4.0 / (1.0 - 4.0 * m * m);
  } else {
    k.r = (edge_log(x) - edge_log(y)) / (4.0 * pi2 * (x - y));
  }
  return k;
}

KernelValues continuum_kernel(double x, double y, const ChainSpec& spec, long n_b) {
  return continuum_kernel(x, y, g_infinite(0, spec), n_b);
}

}  // namespace hchain
