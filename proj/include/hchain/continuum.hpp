#pragma once

// Massive free boson on a circle of circumference L and its lattice
// discretization onto the harmonic chain.

#include "hchain/chain_model.hpp"

#include <cmath>
#include <limits>

namespace hchain {

struct ContinuumSpec {
  double mu = 1.0;
  /// Circumference; infinity selects the infinite line.
  double L = std::numeric_limits<double>::infinity();
  long n = 256;  // lattice sites used for the correspondence

  bool infinite() const { return !std::isfinite(L); }
};

/// K0(mu|x|)/(2 pi).
double g_cont(double x, double mu);
/// -(mu/(2 pi |x|)) K1(mu|x|).
double h_cont(double x, double mu);

/// Periodic correlators on a circle of circumference L (sum over images).
double g_cont_periodic(double x, double mu, double L);
double h_cont_periodic(double x, double mu, double L);

/// mu|x| << 1 and mu|x| >> 1 limits.
double g_cont_small(double x, double mu);
double g_cont_large(double x, double mu);
double h_cont_small(double x);
double h_cont_large(double x, double mu);

struct Discretization {
  ChainSpec chain;
  double lambda = 0;    // Lambda = sqrt(2 (N/L)^2 + mu^2)
  double e0 = 0;        // equal to Lambda
  double spacing = 0;   // a = L/N
};

/// Requires a finite L.
Discretization discretize(const ContinuumSpec& cont);

struct CorrespondencePoint {
  double x = 0;
  long n_sites = 0;
  long index = 0;        // lattice separation round(|x| N / L)
  bool aligned = false;  // |x| N / L integral to 1e-9
  double g_discrete = 0;  // g_n / sqrt2
  double g_continuum = 0;
  double rel_err_g = 0;
  double h_discrete = 0;  // sqrt2 (N/L)^2 h_n
  double h_continuum = 0;
  double rel_err_h = 0;
};

CorrespondencePoint correspondence_check(const ContinuumSpec& cont, double x);

}  // namespace hchain
