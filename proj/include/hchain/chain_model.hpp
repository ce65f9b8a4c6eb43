#pragma once

// Circular harmonic chain H = (E0/2) sum_i [p_i^2 + q_i^2 - alpha q_i q_{i+1}]
// and its vacuum two-point functions g_l = <q_0 q_l>, h_l = <p_0 p_l>.

#include "hchain/precision.hpp"
#include "hchain/special_functions.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace hchain {

/// Chain size plus coupling. All coupling parameterizations are derived
/// from the hyperbolic angle xi (z = tanh xi, alpha = tanh 2xi); 1-alpha and
/// 1-z are evaluated from xi directly so they stay accurate as alpha -> 1.
class ChainSpec {
 public:
  static ChainSpec from_xi(long n, double xi);
  static ChainSpec from_alpha(long n, double alpha);
  static ChainSpec from_z(long n, double z);
  /// For callers that already hold 1-alpha without cancellation.
  static ChainSpec from_one_minus_alpha(long n, double one_minus_alpha);

  long n() const { return n_; }
  double xi() const { return xi_; }
  double alpha() const { return alpha_; }
  double z() const { return z_; }
  double mu_aux() const { return mu_aux_; }
  double one_minus_alpha() const { return one_minus_alpha_; }
  double one_minus_z() const { return one_minus_z_; }

  /// 1-alpha recomputed at the working precision of Real.
  template <class Real>
  Real one_minus_alpha_as() const;
  template <class Real>
  Real alpha_as() const;

 private:
  ChainSpec(long n, double xi, double one_minus_alpha_override);
  long n_ = 0;
  double xi_ = 0;
  double alpha_ = 0;
  double z_ = 0;
  double mu_aux_ = 1;
  double one_minus_alpha_ = 1;
  double one_minus_z_ = 1;
  bool oma_given_ = false;
};

struct RegimeScales {
  double l_c = 0;  // correlation length 1/(-ln z)
  double N_t = 0;  // transitional size sqrt(2/(1-alpha))
  double N_c = 0;  // critical size N_t / ln N_t
};

enum class Regime { I, II, III };

std::string_view regime_name(Regime r);

/// Conventions for the regime boundaries. Only order-of-magnitude conditions
/// exist for these, so the factors are configurable.
struct RegimeThresholds {
  double weak_factor = 4.0;  // regime I when N > weak_factor * N_t
};

template <class Real>
struct BasicCorrelationTable {
  ChainSpec spec;
  std::vector<Real> g;  // g[l], l = 0..N-1
  std::vector<Real> h;

  long size() const { return spec.n(); }
  /// Correlation at separation d, any integer d (wrapped mod N).
  const Real& g_at(long d) const { return g[wrap(d)]; }
  const Real& h_at(long d) const { return h[wrap(d)]; }

 private:
  std::size_t wrap(long d) const {
    const long n = spec.n();
    return static_cast<std::size_t>(((d % n) + n) % n);
  }
};

using CorrelationTable = BasicCorrelationTable<double>;

/// nu(theta) = sqrt((1-alpha) + 2 alpha sin^2(theta/2)).
double dispersion(double theta, double alpha);
double dispersion(double theta, const ChainSpec& spec);

/// Finite-N correlation sums for all separations. O(N^2); the double
/// instantiation runs on the SIMD cosine-sum kernel.
template <class Real>
BasicCorrelationTable<Real> build_correlations(const ChainSpec& spec);

extern template BasicCorrelationTable<double> build_correlations<double>(const ChainSpec&);
extern template BasicCorrelationTable<Mp> build_correlations<Mp>(const ChainSpec&);

/// (g_l, h_l) for a single separation, O(N).
std::pair<double, double> finite_correlation(const ChainSpec& spec, long l);

/// N -> infinity correlations from the 2F1 closed forms.
double g_infinite(long l, const ChainSpec& spec, const special::SeriesControl& ctl = {});
double h_infinite(long l, const ChainSpec& spec, const special::SeriesControl& ctl = {});

/// -(1/(sqrt2 pi)) ln(((1-z)/2) l); valid for 1 <= l < l_c.
double g_strong_asymptotic(long l, const ChainSpec& spec);

/// Contribution of the theta = 0 mode: 1/(2 N sqrt(1-alpha)).
double finite_size_g_correction(const ChainSpec& spec);

RegimeScales regime_scales(const ChainSpec& spec);
Regime classify_regime(const ChainSpec& spec, const RegimeThresholds& thresholds = {});

/// max_{ij} |(G H)_ij - delta_ij/4| for the circulant matrices of the table,
/// accumulated at the table's precision (Mp: caller holds the guard).
double circulant_purity_defect(const CorrelationTable& table);
double circulant_purity_defect(const BasicCorrelationTable<Mp>& table);

}  // namespace hchain
