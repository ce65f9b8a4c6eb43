#include "hchain/analytics.hpp"
#include "hchain/entanglement.hpp"
#include "hchain/special_functions.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>

using namespace hchain;

TEST(SingleOscillator, RegimeFormulas) {
  EXPECT_NEAR(single_osc_lambda(ChainSpec::from_z(100, 0.2), Regime::I), 0.505, 1e-15);
  const ChainSpec two = ChainSpec::from_one_minus_alpha(10000, 2e-8);
  EXPECT_NEAR(regime_scales(two).N_t, 1e4, 1e-6);
  EXPECT_NEAR(single_osc_lambda(two, Regime::II), std::sqrt(std::log(4e4)) / M_PI, 1e-12);
  EXPECT_NEAR(single_osc_lambda(two, Regime::II), 1.0360, 2e-4);
  const auto t = build_correlations<double>(two);
  const double numeric = std::sqrt(t.g[0] * t.h[0]);
  EXPECT_NEAR(single_osc_lambda(two, Regime::II), numeric, 0.1 * numeric);
  const double n = 1000;
  const double nt = 2 * M_PI * n;
  const ChainSpec three = ChainSpec::from_one_minus_alpha(1000, 2 / (nt * nt));
  EXPECT_NEAR(single_osc_lambda(three, Regime::III), 1.0, 1e-12);
  EXPECT_NEAR(single_osc_entropy(three, Regime::III), 1.0, 1e-12);
}

TEST(SingleOscillator, WeakEntropy) {
  const ChainSpec s = ChainSpec::from_z(10000, 0.2);
  EXPECT_EQ(classify_regime(s), Regime::I);
  EXPECT_NEAR(single_osc_entropy(s), 0.005 * (1 - std::log(0.005)), 1e-15);
  EXPECT_NEAR(single_osc_entropy(s), 0.031492, 5e-7);
  EXPECT_EQ(single_osc_entropy(s), single_osc_entropy(s, Regime::I));
}

TEST(WeakModes, Values) {
  EXPECT_NEAR(weak_mode_lambda(1, 0.2), 0.5025, 1e-15);
  EXPECT_NEAR(weak_mode_lambda(2, 0.2) - 0.5, 1.5625e-8, 1e-16);
  EXPECT_NEAR(weak_mode_entropy(1, 0.2), 0.0025 * (1 - 2 * std::log(0.05)), 1e-15);
  EXPECT_NEAR(weak_mode_entropy(1, 0.2), 0.017479, 5e-7);
  EXPECT_LT(weak_mode_entropy(1, 1e-8), 1e-15);
  EXPECT_LT(weak_mode_entropy(3, 0.2), weak_mode_entropy(2, 0.2));
}

TEST(WeakModes, WedgeMatchesNumerics) {
  const CorrelationTable t = build_correlations<double>(ChainSpec::from_z(500, 0.2));
  const EntanglementReport r = analyze(ChainSpec::from_z(500, 0.2), {0, 12});
  ASSERT_GE(r.modes.size(), 2u);
  for (int k = 0; k < 2; ++k) {
    const double wedge = wedge_lambda(1, 12, t, r.modes[k].parity) - 0.5;
    EXPECT_NEAR(wedge, r.modes[k].excess, 0.05 * r.modes[k].excess);
  }
  const CorrelationTable product = build_correlations<double>(ChainSpec::from_xi(64, 1e-12));
  EXPECT_NEAR(wedge_lambda(1, 8, product, 1), 0.5, 1e-12);
}

TEST(WeakModes, ParitySplittingDecaysWithBlockSize) {
  const double z = 0.2;
  const CorrelationTable t = build_correlations<double>(ChainSpec::from_z(500, z));
  const auto exponent = [&](long d, long nb) {
    const double split = wedge_kappa_sq(d, nb, t, 1) - wedge_kappa_sq(d, nb, t, -1);
    return std::log(std::abs(split)) / std::log(z);
  };
  // One power of z per added site.
  const double slope = (exponent(1, 16) - exponent(1, 6)) / 10;
  EXPECT_NEAR(slope, 1.0, 0.1);
  // Two powers of z per unit of depth, up to the prefactor ratio of the
  // correlators at separations 1 and 3.
  EXPECT_NEAR(exponent(2, 12) - exponent(1, 12), 2.0, 1.5);
}

TEST(Collective, HChi) {
  double direct = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) direct += -(std::sqrt(2.0) / M_PI) / (4.0 * (i - j) * (i - j) - 1);
  direct /= 3;
  EXPECT_NEAR(collective_h_chi(3), direct, 1e-14);
  EXPECT_NEAR(collective_h_chi(3), std::sqrt(2.0) / M_PI * 23 / 45, 1e-14);
  EXPECT_NEAR(collective_h_chi(3), 0.23008, 5e-6);
  EXPECT_NEAR(collective_h_chi(1), std::sqrt(2.0) / M_PI, 1e-14);
  double prev = 1;
  for (long nb : {100L, 10000L, 1000000L}) {
    const double ratio = collective_h_chi(nb) * std::sqrt(2.0) * nb * M_PI / std::log(4.0 * nb);
    EXPECT_LT(std::abs(ratio - 1), prev);
    prev = std::abs(ratio - 1);
  }
  EXPECT_LT(prev, 0.05);
}

TEST(Collective, GChiAndLambda) {
  const ChainSpec s = ChainSpec::from_xi(2048, 10);
  const CorrelationTable t = build_correlations<double>(s);
  double sum = 0;
  for (long i = 0; i < 8; ++i)
    for (long j = 0; j < 8; ++j) sum += t.g_at(i - j);
  EXPECT_NEAR(collective_g_chi(t, 8), sum / 8, 1e-12 * sum);
  EXPECT_NEAR(collective_lambda(1, t.g[0]), std::sqrt(t.g[0] * std::sqrt(2.0) / M_PI), 1e-12);
  const EntanglementReport r = analyze(s, {0, 64});
  EXPECT_NEAR(collective_lambda(64, t.g[0]), r.modes[0].lambda, 0.05 * r.modes[0].lambda);
}

TEST(Residual, OmegaRelations) {
  for (double w : {0.01, 0.2, 1.0, 3.0}) {
    const double l = lambda_of_omega(w);
    EXPECT_NEAR((l * l - kappa_sq_of_omega(w)) , 0.25, 1e-14 * l * l);
    EXPECT_NEAR(beta_of_lambda(l), 2 * M_PI * w, 1e-9 * (1 + 2 * M_PI * w));
  }
  EXPECT_NEAR(lambda_of_omega(0.2), 0.5 / std::tanh(0.2 * M_PI), 1e-15);
  EXPECT_NEAR(lambda_of_omega(20.0), 0.5, 1e-15);
}

TEST(Residual, PlaneWaveEigenvalue) {
  // v coth(v/2) = |v| + 2|v|/(e^|v| - 1); |v| transforms to -2/w^2.
  for (double w : {0.25, 0.5, 1.0, 1.5, 2.0}) {
    const auto smooth = [w](double v) {
      const double a = std::abs(v);
      return a < 1e-12 ? 2.0 : 2 * a / std::expm1(a) * std::cos(w * v);
    };
    const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(smooth, -40.0, 40.0, 15, 1e-12);
    const double kappa_sq = -(1 / (8 * M_PI * M_PI)) * (-2 / (w * w) + integral);
    EXPECT_NEAR(kappa_sq, kappa_sq_of_omega(w), 0.01 * kappa_sq_of_omega(w)) << w;
  }
}

TEST(Quantization, FunctionAndSolver) {
  const double zeta = 0.45;
  // Rises from 0, peaks, then falls back to 1 at f = 1/zeta.
  EXPECT_NEAR(quantization_function(1 / zeta, zeta), 1.0, 1e-12);
  EXPECT_GT(quantization_function(0.9 / zeta, zeta), 1.0);
  for (double mu : {0.05, 0.3, 0.7, 0.95}) {
    const double f = solve_quantization(mu, zeta);
    EXPECT_NEAR(quantization_function(f, zeta), mu, 1e-9);
    // unique crossing for mu < 1
    for (double g = 0.01; g < 1 / zeta; g += 0.01) {
      if (g < f - 1e-6) {
        EXPECT_LT(quantization_function(g, zeta), mu);
      }
      if (g > f + 1e-6) {
        EXPECT_GT(quantization_function(g, zeta), mu);
      }
    }
  }
  EXPECT_THROW(solve_quantization(1.5, zeta), DomainError);
}

TEST(Quantization, ScalingPoint) {
  const ScalingPoint p = quantize_residual(8, ResidualModel{0.45, 16});
  EXPECT_DOUBLE_EQ(p.mu_scaled, 0.5);
  EXPECT_NEAR(p.omega, M_PI * 16 * p.f / 4, 1e-12);
  EXPECT_NEAR(p.turning_point, 0.5 * std::sqrt(1 - 0.45 * p.f), 1e-15);
  EXPECT_NEAR(p.ln_E_over_Nb, -M_PI * M_PI / 2 * p.f, 1e-15);
  // At m = N_b the rising-branch root is returned.
  const ScalingPoint full = quantize_residual(20, ResidualModel{0.45, 20});
  EXPECT_NEAR(quantization_function(full.f, 0.45), 1.0, 1e-9);
  EXPECT_LT(full.f, 1 / 0.45);
  EXPECT_LT(full.turning_point, quantize_residual(10, ResidualModel{0.45, 20}).turning_point);
  EXPECT_THROW(quantize_residual(1, ResidualModel{0.45, 16}), DomainError);
  EXPECT_THROW(quantize_residual(17, ResidualModel{0.45, 16}), DomainError);
}

TEST(Quantization, SmallMuLimit) {
  const double mu = 0.5 * std::exp(-1.0) * (1 - 1e-9);
  EXPECT_NEAR(small_mu_f(mu), std::exp(-1.0), 1e-3);
  EXPECT_NEAR(small_mu_f(0.01) * std::log(small_mu_f(0.01)), -0.02, 1e-12);
  // The full solution drifts toward the f ln f form as mu decreases.
  double prev = 0;
  for (double m : {1e-2, 1e-4, 1e-8}) {
    const double ratio = solve_quantization(m, 0.45, 1e-14) / small_mu_f(m);
    EXPECT_GT(ratio, prev);
    EXPECT_LT(ratio, 1.0);
    prev = ratio;
  }
}

TEST(Quantization, PredictionCollapses) {
  for (long m : {3L, 5L, 11L}) {
    EXPECT_NEAR(residual_scaling_prediction(m, 16, 0.45), residual_scaling_prediction(2 * m, 32, 0.45), 1e-9);
  }
  EXPECT_GT(residual_scaling_prediction(2, 100000, 0.45), -1e-3);
}

TEST(OuterModes, Values) {
  EXPECT_NEAR(outer_mode_omega(4, 55), 2 * outer_mode_omega(2, 55), 1e-15);
  EXPECT_NEAR(outer_mode_omega(2, 55), M_PI / std::log(55.0), 1e-15);
  const long nb = 1000000;
  const double edge = std::log(double(nb)) / (M_PI * M_PI);
  EXPECT_GT(outer_mode_entropy_estimate(1, nb), 0.0);
  EXPECT_LT(edge, 2.0);
  EXPECT_LT(outer_mode_entropy_estimate(2, nb), 0.0);
  EXPECT_NEAR(asymptotic_residual_entropy(20), std::log(20.0) / 3, 1e-15);
  EXPECT_NEAR(asymptotic_residual_entropy(400), 2 * asymptotic_residual_entropy(20), 1e-14);
}

TEST(Kernel, Properties) {
  for (double x : {-0.4, -0.1, 0.2, 0.45}) {
    EXPECT_EQ(continuum_kernel(x, 0.0, 3.0, 50).ca, 0.0);
    for (double y : {-0.3, 0.05, 0.35}) {
      EXPECT_NEAR(continuum_kernel(x, y, 3.0, 50).r, continuum_kernel(y, x, 3.0, 50).r, 1e-14);
    }
    const double diag = continuum_kernel(x, x, 3.0, 50).r;
    EXPECT_NEAR(continuum_kernel(x, x + 1e-4, 3.0, 50).r, diag, 1e-6 * diag + 1e-3 * diag);
    EXPECT_NEAR(diag, 1 / (M_PI * M_PI * (1 - 4 * x * x)), 1e-14);
  }
  EXPECT_THROW(continuum_kernel(0.5, 0.0, 3.0, 50), DomainError);
}

TEST(Kernel, MatchesDirectCrossSum) {
  const ChainSpec s = ChainSpec::from_xi(4096, 10);
  const CorrelationTable t = build_correlations<double>(s);
  const long nb = 101;
  for (long i = 25; i <= 75; i += 10) {
    for (long j = 25; j <= 75; j += 10) {
      double direct = 0;
      for (long k = nb; k < 4096; ++k) direct += t.g_at(i - k) * t.h_at(j - k);
      const double x = (i - (nb - 1) / 2.0) / nb;
      const double y = (j - (nb - 1) / 2.0) / nb;
      const double kernel = continuum_kernel(x, y, t.g[0], nb).total() / nb;
      EXPECT_NEAR(kernel, direct, 0.01 * std::abs(direct)) << i << " " << j;
    }
  }
}
