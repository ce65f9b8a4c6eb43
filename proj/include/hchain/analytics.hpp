#pragma once

// Closed-form approximations for the single-site, weak-coupling, collective
// and residual-mode spectra.

#include "hchain/chain_model.hpp"

namespace hchain {

/// Single-oscillator symplectic eigenvalue in the given regime.
double single_osc_lambda(const ChainSpec& spec, Regime regime);
/// Entropy of the single-site block using the formula of the given regime.
double single_osc_entropy(const ChainSpec& spec, Regime regime);
/// Entropy using the regime picked by classify_regime.
double single_osc_entropy(const ChainSpec& spec, const RegimeThresholds& thresholds = {});

/// 1/2 + (z/4)^{2(2d-1)} for a mode at depth d from the block edge.
double weak_mode_lambda(long depth, double z);
double weak_mode_entropy(long depth, double z);

/// lambda^2 - 1/4 = -[h_Nb +- h_{2d-1}][g_Nb +- g_{2d-1}] from the localized ansatz.
double wedge_kappa_sq(long depth, long n_b, const CorrelationTable& table, int parity);
double wedge_lambda(long depth, long n_b, const CorrelationTable& table, int parity);

/// chi^T H_A chi for the uniform unit vector in the alpha -> 1 limit.
double collective_h_chi(long n_b);
/// chi^T G_A chi for the uniform unit vector.
double collective_g_chi(const CorrelationTable& table, long n_b);
/// sqrt(N_b g_0 h_chi).
double collective_lambda(long n_b, double g0);

/// kappa^2 = 1/(4 sinh^2(pi w)), lambda = coth(pi w)/2.
double kappa_sq_of_omega(double omega);
double lambda_of_omega(double omega);

struct ResidualModel {
  double zeta = 0.45;
  long n_b = 1;
};

struct ScalingPoint {
  double mu_scaled = 0;  // m / N_b
  double f = 0;          // 4 omega / (pi N_b)
  double omega = 0;
  double turning_point = 0;  // x_t
  double ln_E_over_Nb = 0;
};

/// Left-hand side of the quantization condition as a function of f.
double quantization_function(double f, double zeta);
/// Root f in (0, 1/zeta] of quantization_function(f) = mu, by bisection.
double solve_quantization(double mu, double zeta, double tolerance = 1e-10);
/// Fixed-point solution of f ln f = -2 mu (small-mu limit), mu < 1/(2e).
double small_mu_f(double mu);

ScalingPoint quantize_residual(long m, const ResidualModel& model);
/// -(pi^2/2) f(m/N_b).
double residual_scaling_prediction(long m, long n_b, double zeta);

/// m pi / (2 ln N_b).
double outer_mode_omega(long m, long n_b);
/// -ln(pi^2 m / ln N_b).
double outer_mode_entropy_estimate(long m, long n_b);
/// ln(N_b) / 3.
double asymptotic_residual_entropy(long n_b);

struct KernelValues {
  double cs = 0;
  double ca = 0;
  double r = 0;
  double total() const { return cs + ca + r; }
};

/// Kernel pieces of the block cross-correlation in scaled coordinates
/// |x|, |y| < 1/2. g0 is the on-site position correlation of the chain.
KernelValues continuum_kernel(double x, double y, double g0, long n_b);
KernelValues continuum_kernel(double x, double y, const ChainSpec& spec, long n_b);

}  // namespace hchain
