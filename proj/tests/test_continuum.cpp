#include "hchain/continuum.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <gtest/gtest.h>

#include <cmath>

using namespace hchain;

TEST(Correlators, PositionMatchesCosineIntegral) {
  // g(x) = (1/2pi) int_0^inf cos(k x) / sqrt(k^2 + mu^2) dk
  boost::math::quadrature::ooura_fourier_cos<double> cosine;
  for (double mu : {1.0, 0.5, 2.0}) {
    const double x = 1.0 / mu;
    const auto [value, err] = cosine.integrate([mu](double k) { return 1 / std::sqrt(k * k + mu * mu); }, x);
    EXPECT_NEAR(g_cont(x, mu), value / (2 * M_PI), 1e-8);
  }
}

TEST(Correlators, MomentumMatchesIntegralRepresentation) {
  // K_1(z) = int_0^inf exp(-z cosh t) cosh t dt
  boost::math::quadrature::exp_sinh<double> integrator;
  for (double x : {0.2, 1.0, 4.0}) {
    const double z = x;
    const double k1 = integrator.integrate([z](double t) {
      const double c = std::cosh(t);
      return std::isfinite(c) ? std::exp(-z * c + t) / 2 + std::exp(-z * c - t) / 2 : 0.0;
    });
    EXPECT_NEAR(h_cont(x, 1.0), -k1 / (2 * M_PI * x), 1e-9 * k1 / x);
    EXPECT_EQ(h_cont(-x, 1.0), h_cont(x, 1.0));
    EXPECT_EQ(g_cont(-x, 1.0), g_cont(x, 1.0));
  }
  EXPECT_THROW(g_cont(0.0, 1.0), DomainError);
  EXPECT_THROW(h_cont(0.0, 1.0), DomainError);
}

TEST(Correlators, AsymptoticWindows) {
  for (double mx : {1e-4, 1e-3, 0.01, 0.049}) {
    EXPECT_NEAR(g_cont_small(mx, 1.0), g_cont(mx, 1.0), 0.01 * g_cont(mx, 1.0));
    EXPECT_NEAR(g_cont_small(mx, 1.0), -(std::log(mx / 2) + special::kEulerGamma) / (2 * M_PI), 1e-15);
    EXPECT_NEAR(h_cont_small(mx), h_cont(mx, 1.0), 0.01 * std::abs(h_cont(mx, 1.0)));
  }
  // Leading terms only: the next order is 3/(8 mu x) for h and -1/(8 mu x) for g.
  for (double mx : {5.1, 8.0, 20.0, 50.0}) {
    EXPECT_NEAR(std::abs(h_cont_large(mx, 1.0)), std::sqrt(1 / (8 * M_PI * mx * mx * mx)) * std::exp(-mx), 1e-15);
    EXPECT_NEAR(h_cont_large(mx, 1.0), h_cont(mx, 1.0), 0.45 / mx * std::abs(h_cont(mx, 1.0)));
    EXPECT_NEAR(g_cont_large(mx, 1.0), g_cont(mx, 1.0), 0.15 / mx * g_cont(mx, 1.0));
    if (mx >= 20) {
      EXPECT_NEAR(h_cont_large(mx, 1.0), h_cont(mx, 1.0), 0.02 * std::abs(h_cont(mx, 1.0)));
    }
  }
}

TEST(Correlators, BesselDerivativeIdentity) {
  // d/dx K0(mu x)/(2 pi) = -(mu/2pi) K1(mu x) = x h(x)
  const double mu = 1.0;
  for (double x = 0.1; x <= 10.0; x *= 1.5) {
    const double step = 1e-5 * x;
    const double fd = (g_cont(x + step, mu) - g_cont(x - step, mu)) / (2 * step);
    EXPECT_NEAR(fd, x * h_cont(x, mu), 1e-6 * std::abs(x * h_cont(x, mu))) << x;
  }
}

TEST(Correlators, PeriodicApproachesLine) {
  EXPECT_NEAR(g_cont_periodic(0.7, 1.0, 100.0), g_cont(0.7, 1.0), 1e-15);
  EXPECT_NEAR(h_cont_periodic(0.7, 1.0, 100.0), h_cont(0.7, 1.0), 1e-15);
  const double L = 4.0;
  double images = 0;
  for (int k = -8; k <= 8; ++k) images += g_cont(0.7 + k * L, 1.0);
  EXPECT_NEAR(g_cont_periodic(0.7, 1.0, L), images, 1e-12);
  EXPECT_NEAR(g_cont_periodic(0.7, 1.0, L), g_cont_periodic(L - 0.7, 1.0, L), 1e-14);
}

TEST(Discretize, Coupling) {
  const Discretization d = discretize({1.0, 10.0, 1000});
  const double lambda = std::sqrt(2 * 100.0 * 100.0 + 1.0);
  EXPECT_NEAR(d.lambda, lambda, 1e-12);
  EXPECT_EQ(d.e0, d.lambda);
  EXPECT_NEAR(d.spacing, 0.01, 1e-16);
  EXPECT_NEAR(d.chain.one_minus_alpha(), 1 / (lambda * lambda), 1e-14 / (lambda * lambda));
  EXPECT_NEAR(d.chain.alpha(), 1 / (1 + 0.5 * 0.01 * 0.01), 1e-14);
  EXPECT_EQ(d.chain.n(), 1000);
  // mu L / N = sqrt 2
  const Discretization half = discretize({std::sqrt(2.0), 10.0, 10});
  EXPECT_NEAR(half.chain.alpha(), 0.5, 1e-14);
  EXPECT_GT(discretize({1e-6, 1.0, 1000}).chain.alpha(), 1 - 1e-15);
  EXPECT_THROW(discretize({1.0, std::numeric_limits<double>::infinity(), 16}), DomainError);
}

TEST(Discretize, LengthScales) {
  // The correlation length is 1/mu in lattice units; N_t is twice that.
  for (long n : {1000L, 5000L}) {
    const Discretization d = discretize({1.0, 10.0, n});
    const RegimeScales s = regime_scales(d.chain);
    const double continuum = 1 / (1.0 * d.spacing);
    EXPECT_NEAR(s.l_c / continuum, 1.0, 0.1);
    EXPECT_NEAR(s.N_t / (2 * continuum), 1.0, 0.1);
  }
}

TEST(Correspondence, ConvergesWithLatticeSize) {
  const double x = 0.3125;
  double prev_g = 1, prev_h = 1;
  for (long n : {256L, 512L, 1024L}) {
    const CorrespondencePoint p = correspondence_check({1.0, 10.0, n}, x);
    EXPECT_TRUE(p.aligned);
    EXPECT_EQ(p.index, std::lround(x * n / 10.0));
    EXPECT_NEAR(p.g_continuum, g_cont_periodic(x, 1.0, 10.0), 1e-15);
    EXPECT_LT(p.rel_err_g, prev_g);
    EXPECT_LT(p.rel_err_h, prev_h);
    prev_g = p.rel_err_g;
    prev_h = p.rel_err_h;
  }
  EXPECT_LT(prev_g, 0.05);
  EXPECT_FALSE(correspondence_check({1.0, 10.0, 256}, 0.3).aligned);
}

TEST(Correspondence, MomentumSignAndMagnitude) {
  const CorrespondencePoint p = correspondence_check({1.0, 10.0, 1000}, 3.0);
  ASSERT_TRUE(p.aligned);
  EXPECT_LT(p.h_discrete, 0.0);
  EXPECT_LT(p.h_continuum, 0.0);
  EXPECT_LT(p.rel_err_h, 0.05);
}
