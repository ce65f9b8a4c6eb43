#include "hchain/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hchain {
namespace {

template <class F>
auto run_stage(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const NumericError&) {
    throw;
  } catch (const std::exception& e) {
    throw NumericError(stage, e.what());
  }
}

template <class Real>
std::vector<double> to_std(const Vector<Real>& v) {
  std::vector<double> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = to_double(v(i));
  return out;
}

}  // namespace

template <class Real>
Real entropy_from_excess(const Real& excess) {
  using std::log;
  using std::log1p;
  if (excess < 0) throw DomainError("entropy: negative excess");
  if (excess == 0) return Real(0);
  return (1 + excess) * log1p(excess) - excess * log(excess);
}

template <class Real>
Real beta_from_excess(const Real& excess) {
  using std::log;
  using std::log1p;
  if (excess < 0) throw DomainError("beta: negative excess");
  if (excess == 0) return Real(std::numeric_limits<double>::infinity());
  return log1p(excess) - log(excess);
}

template double entropy_from_excess(const double&);
template Mp entropy_from_excess(const Mp&);
template double beta_from_excess(const double&);
template Mp beta_from_excess(const Mp&);

double entropy_of_lambda(double lambda) {
  if (lambda < 0.5 - 1e-9) throw DomainError("entropy: lambda below 1/2");
  return entropy_from_excess(std::max(0.0, lambda - 0.5));
}

double beta_of_lambda(double lambda) {
  if (lambda < 0.5 - 1e-9) throw DomainError("beta: lambda below 1/2");
  return beta_from_excess(std::max(0.0, lambda - 0.5));
}

double entropy_expansions(double lambda) {
  if (lambda < 0.5 - 1e-9) throw DomainError("entropy: lambda below 1/2");
  const double d = std::max(0.0, lambda - 0.5);
  if (d == 0.0) return 0.0;
  if (d < 0.01) return d * (1.0 - std::log(d));
  if (lambda > 50.0) return 1.0 + std::log(lambda);
  return entropy_from_excess(d);
}

template <class Real>
EntanglementReport analyze_block(const BasicCorrelationTable<Real>& table, const BlockPartition& part,
                                 const AnalysisOptions& opts) {
  using std::log;
  EntanglementReport rep{table.spec, part};
  rep.side = opts.side;
  rep.precision_bits = std::is_same_v<Real, double> ? kDoubleBits : mp_precision_bits();
  rep.regime = classify_regime(table.spec, opts.regime);

  const BasicBlockCovariance<Real> cov = run_stage("extract", [&] {
    return opts.side == Side::block ? extract_block(table, part) : extract_complement(table, part);
  });
  Real floor = 0;
  std::vector<ModeVectors<Real>> raw =
      run_stage("modes", [&] { return williamson_modes(cov, &floor); });
  rep.resolution_floor = to_double(floor);
  const Real threshold = std::max(Real(opts.entangled_threshold), floor);
  const Real half = Real(1) / 2;

  for (const ModeVectors<Real>& m : raw) {
    const Real excess = m.kappa_sq / (m.lambda + half);
    rep.spectrum.lambdas.push_back(to_double(m.lambda));
    rep.spectrum.parities.push_back(m.parity);
    rep.spectrum.excess.push_back(to_double(excess));
    rep.spectrum.kappa_sq.push_back(to_double(m.kappa_sq));
    if (excess < threshold) continue;

    ModePair mp;
    mp.lambda = to_double(m.lambda);
    mp.excess = to_double(excess);
    mp.kappa_sq = to_double(m.kappa_sq);
    mp.kappa = std::sqrt(mp.kappa_sq);
    mp.parity = m.parity;
    mp.degenerate = m.degenerate;
    mp.u_a = to_std(m.u);
    mp.v_a = to_std(m.v);
    run_stage("mapping", [&] {
      const auto [u_b, v_b] = map_mode(cov, m);
      mp.u_b = to_std(u_b);
      mp.v_b = to_std(v_b);
      mp.mapped = true;
      mp.diagnostics = mode_diagnostics(cov, m, u_b, v_b);
    });
    run_stage("participation", [&] {
      // u.v is formed at working precision, then rounded entrywise.
      mp.participation_a.resize(static_cast<std::size_t>(m.u.size()));
      for (Eigen::Index i = 0; i < m.u.size(); ++i) {
        mp.participation_a[static_cast<std::size_t>(i)] = to_double(Real(m.u(i) * m.v(i)));
      }
      mp.turning_point = turning_point(mp.participation_a);
    });
    run_stage("entropy", [&] {
      const Real e = entropy_from_excess(excess);
      mp.entropy = to_double(e);
      mp.log_entropy = to_double(Real(log(e)));
      mp.beta = to_double(beta_from_excess(excess));
    });
    rep.modes.push_back(std::move(mp));
  }

  std::stable_sort(rep.modes.begin(), rep.modes.end(), [](const ModePair& a, const ModePair& b) {
    if (a.log_entropy != b.log_entropy) return a.log_entropy > b.log_entropy;
    if (a.parity != b.parity) return a.parity > b.parity;
    return a.turning_point < b.turning_point;
  });

  // Neumaier summation.
  double sum = 0.0, comp = 0.0;
  for (const ModePair& m : rep.modes) {
    const double t = sum + m.entropy;
    comp += std::abs(sum) >= std::abs(m.entropy) ? (sum - t) + m.entropy : (m.entropy - t) + sum;
    sum = t;
    rep.per_mode_beta.push_back(m.beta);
  }
  rep.total = sum + comp;
  return rep;
}

template EntanglementReport analyze_block(const BasicCorrelationTable<double>&, const BlockPartition&,
                                          const AnalysisOptions&);
template EntanglementReport analyze_block(const BasicCorrelationTable<Mp>&, const BlockPartition&,
                                          const AnalysisOptions&);

EntanglementReport analyze(const ChainSpec& spec, const BlockPartition& part,
                           const AnalysisOptions& opts) {
  if (opts.precision_bits <= kDoubleBits) {
    const CorrelationTable table = run_stage("correlations", [&] { return build_correlations<double>(spec); });
    return analyze_block(table, part, opts);
  }
  PrecisionGuard guard(opts.precision_bits);
  const auto table = run_stage("correlations", [&] { return build_correlations<Mp>(spec); });
  return analyze_block(table, part, opts);
}

}  // namespace hchain
