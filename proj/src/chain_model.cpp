#include "hchain/chain_model.hpp"

#include "hchain/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

namespace hchain {
namespace {

void check_size(long n) {
  if (n < 2) throw DomainError("chain size must be at least 2, got " + std::to_string(n));
}

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      c += (sum - t) + x;
    } else {
      c += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + c; }
};

}  // namespace

ChainSpec::ChainSpec(long n, double xi, double one_minus_alpha_override) : n_(n), xi_(xi) {
  const double e4 = std::exp(-4.0 * xi);
  const double e2 = std::exp(-2.0 * xi);
  alpha_ = (1.0 - e4) / (1.0 + e4);
  z_ = (1.0 - e2) / (1.0 + e2);
  one_minus_z_ = 2.0 * e2 / (1.0 + e2);
  mu_aux_ = 1.0 / std::sqrt(1.0 + z_ * z_);
  if (one_minus_alpha_override > 0.0) {
    one_minus_alpha_ = one_minus_alpha_override;
    alpha_ = 1.0 - one_minus_alpha_override;
    oma_given_ = true;
  } else {
    one_minus_alpha_ = 2.0 * e4 / (1.0 + e4);
  }
}

ChainSpec ChainSpec::from_xi(long n, double xi) {
  check_size(n);
  if (!(xi > 0.0) || !std::isfinite(xi)) {
    throw DomainError("xi must be positive and finite, got " + std::to_string(xi));
  }
  return ChainSpec(n, xi, 0.0);
}

ChainSpec ChainSpec::from_alpha(long n, double alpha) {
  check_size(n);
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  return ChainSpec(n, 0.5 * std::atanh(alpha), 0.0);
}

ChainSpec ChainSpec::from_z(long n, double z) {
  check_size(n);
  if (!(z > 0.0 && z < 1.0)) throw DomainError("z must lie in (0, 1), got " + std::to_string(z));
  return ChainSpec(n, std::atanh(z), 0.0);
}

ChainSpec ChainSpec::from_one_minus_alpha(long n, double one_minus_alpha) {
  check_size(n);
  if (!(one_minus_alpha > 0.0 && one_minus_alpha < 1.0)) {
    throw DomainError("1-alpha must lie in (0, 1), got " + std::to_string(one_minus_alpha));
  }
  const double xi = 0.25 * (std::log(2.0 - one_minus_alpha) - std::log(one_minus_alpha));
  return ChainSpec(n, xi, one_minus_alpha);
}

template <class Real>
Real ChainSpec::one_minus_alpha_as() const {
  using std::exp;
  if (oma_given_) return Real(one_minus_alpha_);
  const Real e4 = exp(Real(-4) * Real(xi_));
  return 2 * e4 / (1 + e4);
}

template <class Real>
Real ChainSpec::alpha_as() const {
  return Real(1) - one_minus_alpha_as<Real>();
}

template double ChainSpec::one_minus_alpha_as<double>() const;
template Mp ChainSpec::one_minus_alpha_as<Mp>() const;
template double ChainSpec::alpha_as<double>() const;
template Mp ChainSpec::alpha_as<Mp>() const;

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::I:
      return "I";
    case Regime::II:
      return "II";
    case Regime::III:
      return "III";
  }
  return "?";
}

double dispersion(double theta, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in [0, 1), got " + std::to_string(alpha));
  }
  const double s = std::sin(0.5 * theta);
  return std::sqrt((1.0 - alpha) + 2.0 * alpha * s * s);
}

double dispersion(double theta, const ChainSpec& spec) {
  const double s = std::sin(0.5 * theta);
  return std::sqrt(spec.one_minus_alpha() + 2.0 * spec.alpha() * s * s);
}

template <class Real>
BasicCorrelationTable<Real> build_correlations(const ChainSpec& spec) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const long n = spec.n();
  const long half = n / 2;
  const std::size_t m = static_cast<std::size_t>(half) + 1;
  const Real pi = pi_v<Real>();
  const Real oma = spec.one_minus_alpha_as<Real>();
  const Real alpha = spec.alpha_as<Real>();

  std::vector<Real> cos_table(static_cast<std::size_t>(n));
  for (long j = 0; j < n; ++j) {
    const long r = std::min(j, n - j);
    cos_table[static_cast<std::size_t>(j)] = cos(2 * pi * Real(r) / Real(n));
  }

  // Only k = 0..N/2 are distinct; the others enter through the weights.
  std::vector<Real> w1(m), w2(m);
  for (std::size_t k = 0; k < m; ++k) {
    const long kk = static_cast<long>(k);
    const Real mult = (kk == 0 || 2 * kk == n) ? Real(1) : Real(2);
    const Real s = sin(pi * Real(kk) / Real(n));
    const Real nu = sqrt(oma + 2 * alpha * s * s);
    w1[k] = mult / (2 * Real(n) * nu);
    w2[k] = mult * nu / (2 * Real(n));
  }

  BasicCorrelationTable<Real> table{spec, std::vector<Real>(static_cast<std::size_t>(n)),
                                    std::vector<Real>(static_cast<std::size_t>(n))};
  if constexpr (std::is_same_v<Real, double>) {
    kernels::cosine_sums(w1, w2, cos_table, std::span<double>(table.g.data(), m),
                         std::span<double>(table.h.data(), m));
  } else {
    for (std::size_t l = 0; l < m; ++l) {
      Real s1 = 0, s2 = 0;
      std::size_t idx = 0;
      for (std::size_t k = 0; k < m; ++k) {
        s1 += w1[k] * cos_table[idx];
        s2 += w2[k] * cos_table[idx];
        idx = (idx + l) % static_cast<std::size_t>(n);
      }
      table.g[l] = s1;
      table.h[l] = s2;
    }
  }
  for (long l = half + 1; l < n; ++l) {
    table.g[static_cast<std::size_t>(l)] = table.g[static_cast<std::size_t>(n - l)];
    table.h[static_cast<std::size_t>(l)] = table.h[static_cast<std::size_t>(n - l)];
  }
  return table;
}

template BasicCorrelationTable<double> build_correlations<double>(const ChainSpec&);
template BasicCorrelationTable<Mp> build_correlations<Mp>(const ChainSpec&);

std::pair<double, double> finite_correlation(const ChainSpec& spec, long l) {
  const long n = spec.n();
  const long lr = ((l % n) + n) % n;
  const double oma = spec.one_minus_alpha();
  const double alpha = spec.alpha();
  CompensatedSum g, h;
  for (long k = 0; k < n; ++k) {
    const double s = std::sin(special::kPi * static_cast<double>(k) / static_cast<double>(n));
    const double nu = std::sqrt(oma + 2.0 * alpha * s * s);
    const long j = static_cast<long>((static_cast<__int128>(lr) * k) % n);
    const double c = std::cos(2.0 * special::kPi * static_cast<double>(std::min(j, n - j)) /
                              static_cast<double>(n));
    g.add(c / nu);
    h.add(c * nu);
  }
  const double norm = 0.5 / static_cast<double>(n);
  return {g.value() * norm, h.value() * norm};
}

double g_infinite(long l, const ChainSpec& spec, const special::SeriesControl& ctl) {
  if (l < 0) l = -l;
  const double z = spec.z();
  const double x = z * z;
  const double one_minus_x = spec.one_minus_z() * (1.0 + z);
  const double ld = static_cast<double>(l);
  const double f = special::hyp2f1(0.5, ld + 0.5, ld + 1.0, x, one_minus_x, 0.99, ctl);
  return std::pow(z, ld) / (2.0 * spec.mu_aux()) * special::binomial_half(l) * f;
}

double h_infinite(long l, const ChainSpec& spec, const special::SeriesControl& ctl) {
  if (l < 0) l = -l;
  const double z = spec.z();
  const double x = z * z;
  const double one_minus_x = spec.one_minus_z() * (1.0 + z);
  const double ld = static_cast<double>(l);
  const double f = special::hyp2f1(-0.5, ld - 0.5, ld + 1.0, x, one_minus_x, 0.99, ctl);
  const double binom = -special::binomial_half(l) / (2.0 * ld - 1.0);
  return spec.mu_aux() * std::pow(z, ld) / 2.0 * binom * f;
}

double g_strong_asymptotic(long l, const ChainSpec& spec) {
  const double lc = regime_scales(spec).l_c;
  if (l < 1 || static_cast<double>(l) >= lc) {
    throw DomainError("strong-coupling form needs 1 <= l < l_c = " + std::to_string(lc));
  }
  return -std::log(0.5 * spec.one_minus_z() * static_cast<double>(l)) /
         (std::sqrt(2.0) * special::kPi);
}

double finite_size_g_correction(const ChainSpec& spec) {
  return 1.0 / (2.0 * static_cast<double>(spec.n()) * std::sqrt(spec.one_minus_alpha()));
}

RegimeScales regime_scales(const ChainSpec& spec) {
  RegimeScales s;
  s.l_c = -1.0 / std::log1p(-spec.one_minus_z());
  s.N_t = std::sqrt(2.0 / spec.one_minus_alpha());
  s.N_c = s.N_t / std::max(1.0, std::log(s.N_t));
  return s;
}

Regime classify_regime(const ChainSpec& spec, const RegimeThresholds& thresholds) {
  const RegimeScales s = regime_scales(spec);
  const double n = static_cast<double>(spec.n());
  if (n > thresholds.weak_factor * s.N_t) return Regime::I;
  if (s.N_c > n) return Regime::III;
  return Regime::II;
}

double circulant_purity_defect(const CorrelationTable& table) {
  const std::size_t n = table.g.size();
  // (GH)_{i,j} = c_{i-j} with c_d = sum_k g_k h_{k-d}; c_d = c_{n-d}.
  std::vector<double> hh(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) hh[i] = table.h[i % n];
  double worst = 0.0;
  for (std::size_t d = 0; d <= n / 2; ++d) {
    const double c = kernels::dot(table.g, std::span<const double>(hh.data() + n - d, n));
    worst = std::max(worst, std::abs(c - (d == 0 ? 0.25 : 0.0)));
  }
  return worst;
}

double circulant_purity_defect(const BasicCorrelationTable<Mp>& table) {
  const std::size_t n = table.g.size();
  std::vector<Mp> hh(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) hh[i] = table.h[i % n];
  Mp worst = 0;
  Mp c;
  for (std::size_t d = 0; d <= n / 2; ++d) {
    c = d == 0 ? Mp(-0.25) : Mp(0);
    for (std::size_t k = 0; k < n; ++k) {
      mpfr_fma(c.backend().data(), table.g[k].backend().data(), hh[n - d + k].backend().data(),
               c.backend().data(), MPFR_RNDN);
    }
    if (abs(c) > worst) worst = abs(c);
  }
  return to_double(worst);
}

}  // namespace hchain
