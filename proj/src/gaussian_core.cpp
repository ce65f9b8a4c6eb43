#include "hchain/gaussian_core.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <functional>
#include <cmath>
#include <numeric>

namespace hchain {
namespace {

template <class Real>
Real abs_of(const Real& x) {
  using std::abs;
  return abs(x);
}

// P^T M for the parity basis: rows k and n-1-k combine as (r_k +- r_{n-1-k})/sqrt2;
// the centre row of an odd-sized even sector passes through unchanged.
template <class Real>
Matrix<Real> fold_rows(const Matrix<Real>& m, int parity) {
  using std::sqrt;
  const long n = m.rows();
  const long half = n / 2;
  const long ns = parity > 0 ? n - half : half;
  const Real r = 1 / sqrt(Real(2));
  Matrix<Real> out(ns, m.cols());
  for (long k = 0; k < half; ++k) {
    if (parity > 0) {
      out.row(k) = (m.row(k) + m.row(n - 1 - k)) * r;
    } else {
      out.row(k) = (m.row(k) - m.row(n - 1 - k)) * r;
    }
  }
  if (parity > 0 && (n % 2) == 1) out.row(half) = m.row(half);
  return out;
}

// P u: expands a sector vector back to the block.
template <class Real>
Vector<Real> unfold(const Vector<Real>& us, long n, int parity) {
  using std::sqrt;
  const long half = n / 2;
  const Real r = 1 / sqrt(Real(2));
  Vector<Real> u = Vector<Real>::Zero(n);
  for (long k = 0; k < half; ++k) {
    u(k) = us(k) * r;
    u(n - 1 - k) = parity > 0 ? Real(us(k) * r) : Real(-us(k) * r);
  }
  if (parity > 0 && (n % 2) == 1) u(half) = us(half);
  return u;
}

template <class Real>
Matrix<Real> symmetrized(const Matrix<Real>& m) {
  return (m + m.transpose()) / 2;
}

template <class Real>
void fix_sign(Vector<Real>& u, Vector<Real>& v) {
  Eigen::Index imax = 0;
  Real best = -1;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const Real a = abs_of(u(i));
    if (a > best) {
      best = a;
      imax = i;
    }
  }
  if (u(imax) < 0) {
    u = -u;
    v = -v;
  }
}

template <class Real>
Matrix<Real> cholesky_factor(const Matrix<Real>& g) {
  Eigen::LLT<Matrix<Real>> llt(g);
  if (llt.info() != Eigen::Success) {
    throw NumericError("cholesky", "position block is not positive definite");
  }
  return llt.matrixL();
}

// K = L^T C L^{-T} with C = -H_ab G_ab^T = H_A G_A - 1/4 in this sector.
// Returns the symmetric part; `asym` receives |K - K^T|_F.
template <class Real>
Matrix<Real> cross_matrix(const ParitySector<Real>& sec, const Matrix<Real>& l, Real& asym) {
  const Matrix<Real> c = -(sec.h_ab * sec.g_ab.transpose());
  const Matrix<Real> x = l.template triangularView<Eigen::Lower>().solve(c.transpose());
  const Matrix<Real> k_raw = l.transpose() * x.transpose();
  asym = (k_raw - k_raw.transpose()).norm();
  return symmetrized<Real>(k_raw);
}

}  // namespace

void validate_partition(const BlockPartition& part, long n) {
  if (part.size < 1 || 2 * part.size > n) {
    throw DomainError("block size must satisfy 1 <= N_b <= N/2, got N_b=" + std::to_string(part.size) +
                      " N=" + std::to_string(n));
  }
}

template <class Real>
BasicBlockCovariance<Real> extract_block(const BasicCorrelationTable<Real>& table,
                                         const BlockPartition& part) {
  const long n = table.size();
  validate_partition(part, n);
  const long na = part.size;
  const long nb = n - na;
  BasicBlockCovariance<Real> cov;
  cov.partition = part;
  cov.side = Side::block;
  cov.chain_size = n;
  cov.g_a.resize(na, na);
  cov.h_a.resize(na, na);
  for (long i = 0; i < na; ++i) {
    for (long j = 0; j < na; ++j) {
      cov.g_a(i, j) = table.g_at(i - j);
      cov.h_a(i, j) = table.h_at(i - j);
    }
  }
  // Block site i sits at start+i, complement site j at start+na+j; the
  // separation na+j-i lies in [1, n-1], so no wrap is needed.
  cov.g_ab.resize(na, nb);
  cov.h_ab.resize(na, nb);
  for (long i = 0; i < na; ++i) {
    for (long j = 0; j < nb; ++j) {
      cov.g_ab(i, j) = table.g[static_cast<std::size_t>(na + j - i)];
      cov.h_ab(i, j) = table.h[static_cast<std::size_t>(na + j - i)];
    }
  }
  return cov;
}

template <class Real>
BasicBlockCovariance<Real> extract_complement(const BasicCorrelationTable<Real>& table,
                                              const BlockPartition& part) {
  BasicBlockCovariance<Real> blk = extract_block(table, part);
  const long n = table.size();
  const long nc = n - part.size;
  BasicBlockCovariance<Real> cov;
  cov.partition = part;
  cov.side = Side::complement;
  cov.chain_size = n;
  cov.g_a.resize(nc, nc);
  cov.h_a.resize(nc, nc);
  for (long i = 0; i < nc; ++i) {
    for (long j = 0; j < nc; ++j) {
      cov.g_a(i, j) = table.g_at(i - j);
      cov.h_a(i, j) = table.h_at(i - j);
    }
  }
  cov.g_ab = blk.g_ab.transpose();
  cov.h_ab = blk.h_ab.transpose();
  return cov;
}

template <class Real>
std::array<ParitySector<Real>, 2> parity_sectors(const BasicBlockCovariance<Real>& cov) {
  std::array<ParitySector<Real>, 2> out;
  const long n = cov.n_a();
  for (int s = 0; s < 2; ++s) {
    const int parity = s == 0 ? +1 : -1;
    ParitySector<Real>& sec = out[static_cast<std::size_t>(s)];
    sec.parity = parity;
    const Matrix<Real> eye = Matrix<Real>::Identity(n, n);
    sec.basis = fold_rows<Real>(eye, parity).transpose();
    if (sec.basis.cols() == 0) continue;
    const Matrix<Real> pg = fold_rows<Real>(cov.g_a, parity);
    const Matrix<Real> ph = fold_rows<Real>(cov.h_a, parity);
    sec.g = symmetrized<Real>(fold_rows<Real>(Matrix<Real>(pg.transpose()), parity).transpose());
    sec.h = symmetrized<Real>(fold_rows<Real>(Matrix<Real>(ph.transpose()), parity).transpose());
    sec.g_ab = fold_rows<Real>(cov.g_ab, parity);
    sec.h_ab = fold_rows<Real>(cov.h_ab, parity);
  }
  return out;
}

template <class Real>
std::vector<ModeVectors<Real>> williamson_modes(const BasicBlockCovariance<Real>& cov,
                                                Real* resolution_floor) {
  using std::sqrt;
  const auto sectors = parity_sectors(cov);
  const Real eps = machine_epsilon<Real>();
  const Real quarter = Real(1) / 4;
  const Real route_switch = Real(1e-6);
  std::vector<ModeVectors<Real>> modes;
  Real floor = 0;

  for (const ParitySector<Real>& sec : sectors) {
    const long ns = sec.g.rows();
    if (ns == 0) continue;
    const Matrix<Real> l = cholesky_factor(sec.g);
    const Matrix<Real> m = symmetrized<Real>(l.transpose() * sec.h * l);
    Real asym = 0;
    const Matrix<Real> k = cross_matrix(sec, l, asym);

    Eigen::SelfAdjointEigenSolver<Matrix<Real>> eig_m(m);
    Eigen::SelfAdjointEigenSolver<Matrix<Real>> eig_k(k);
    if (eig_m.info() != Eigen::Success || eig_k.info() != Eigen::Success) {
      throw NumericError("spectrum", "symmetric eigensolver did not converge");
    }
    const Real kmax = std::max(abs_of(eig_k.eigenvalues()(ns - 1)), abs_of(eig_k.eigenvalues()(0)));
    const Real sector_floor = std::max(Real(ns) * eps * kmax, asym);
    floor = std::max(floor, sector_floor);
    const Real clamp_tol = std::max(Real(1e-10), 10 * sector_floor);

    std::vector<ModeVectors<Real>> sector_modes;
    for (long i = ns - 1; i >= 0; --i) {
      ModeVectors<Real> mv;
      mv.parity = sec.parity;
      Vector<Real> w;
      const Real mu = eig_m.eigenvalues()(i);
      if (mu - quarter >= route_switch) {
        mv.lambda_sq = mu;
        mv.kappa_sq = mu - quarter;
        w = eig_m.eigenvectors().col(i);
      } else {
        Real ks = eig_k.eigenvalues()(i);
        if (ks < -clamp_tol) {
          throw NumericError("spectrum", "symplectic eigenvalue below 1/2 beyond tolerance");
        }
        if (ks < 0) ks = 0;
        mv.kappa_sq = ks;
        mv.lambda_sq = quarter + ks;
        w = eig_k.eigenvectors().col(i);
      }
      mv.lambda = sqrt(mv.lambda_sq);
      // Scale so that u.v = 1 with u^T G u = v^T H v = lambda.
      const Vector<Real> ws = w * sqrt(mv.lambda);
      const Vector<Real> us = l.transpose().template triangularView<Eigen::Upper>().solve(ws);
      const Vector<Real> vs = (l * ws) / mv.lambda;
      mv.u = unfold<Real>(us, cov.n_a(), sec.parity);
      mv.v = unfold<Real>(vs, cov.n_a(), sec.parity);
      fix_sign(mv.u, mv.v);
      sector_modes.push_back(std::move(mv));
    }
    for (std::size_t i = 0; i < sector_modes.size(); ++i) {
      const Real tol = std::max(Real(1e-12) * sector_modes[i].kappa_sq, sector_floor);
      const bool prev = i > 0 && abs_of(Real(sector_modes[i - 1].kappa_sq - sector_modes[i].kappa_sq)) <= tol;
      const bool next = i + 1 < sector_modes.size() &&
                        abs_of(Real(sector_modes[i + 1].kappa_sq - sector_modes[i].kappa_sq)) <= tol;
      sector_modes[i].degenerate = prev || next;
    }
    for (auto& mv : sector_modes) modes.push_back(std::move(mv));
  }
  std::stable_sort(modes.begin(), modes.end(), [](const ModeVectors<Real>& a, const ModeVectors<Real>& b) {
    return a.kappa_sq > b.kappa_sq;
  });
  if (resolution_floor != nullptr) *resolution_floor = floor;
  return modes;
}

template <class Real>
std::pair<Vector<Real>, Vector<Real>> map_mode(const BasicBlockCovariance<Real>& cov,
                                               const ModeVectors<Real>& mode) {
  using std::sqrt;
  if (!(mode.kappa_sq > 0)) throw NumericError("mapping", "mode has kappa^2 = 0");
  const Real kappa = sqrt(mode.kappa_sq);
  Vector<Real> v_b = cov.g_ab.transpose() * mode.u / kappa;
  Vector<Real> u_b = -(cov.h_ab.transpose() * mode.v) / kappa;
  return {std::move(u_b), std::move(v_b)};
}

template <class Real>
std::vector<double> cross_spectrum(const BasicBlockCovariance<Real>& cov) {
  const auto sectors = parity_sectors(cov);
  std::vector<double> out;
  for (const ParitySector<Real>& sec : sectors) {
    const long ns = sec.g.rows();
    if (ns == 0) continue;
    const Matrix<Real> l = cholesky_factor(sec.g);
    Real asym = 0;
    const Matrix<Real> k = cross_matrix(sec, l, asym);
    Eigen::SelfAdjointEigenSolver<Matrix<Real>> eig(k, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) {
      throw NumericError("cross_spectrum", "symmetric eigensolver did not converge");
    }
    const Real kmax = std::max(abs_of(eig.eigenvalues()(ns - 1)), abs_of(eig.eigenvalues()(0)));
    const Real tol = std::max(Real(1e-10), 10 * std::max(Real(ns) * machine_epsilon<Real>() * kmax, asym));
    for (long i = 0; i < ns; ++i) {
      const Real ks = eig.eigenvalues()(i);
      if (ks < -tol) throw NumericError("cross_spectrum", "-H_ab G_ab^T has a negative eigenvalue");
      out.push_back(ks > 0 ? to_double(ks) : 0.0);
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> participation(const std::vector<double>& u, const std::vector<double>& v) {
  if (u.size() != v.size()) throw DomainError("participation: size mismatch");
  std::vector<double> p(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) p[i] = u[i] * v[i];
  return p;
}

template <class Real>
SymplecticSpectrum symplectic_spectrum(const BasicBlockCovariance<Real>& cov) {
  const auto modes = williamson_modes(cov);
  SymplecticSpectrum s;
  for (const auto& m : modes) {
    s.lambdas.push_back(to_double(m.lambda));
    s.parities.push_back(m.parity);
    s.excess.push_back(to_double(Real(m.kappa_sq / (m.lambda + Real(1) / 2))));
    s.kappa_sq.push_back(to_double(m.kappa_sq));
  }
  return s;
}

template <class Real>
ModeDiagnostics mode_diagnostics(const BasicBlockCovariance<Real>& cov,
                                 const ModeVectors<Real>& mode, const Vector<Real>& u_b,
                                 const Vector<Real>& v_b) {
  using std::sqrt;
  ModeDiagnostics d;
  const Real scale = std::max(Real(1), mode.lambda_sq);
  const Vector<Real> hgu = cov.h_a * (cov.g_a * mode.u);
  d.eigen_defect = to_double(Real((hgu - mode.lambda_sq * mode.u).norm() / (mode.u.norm() * scale)));
  const Vector<Real> ghv = cov.g_a * (cov.h_a * mode.v);
  d.dual_defect = to_double(Real((ghv - mode.lambda_sq * mode.v).norm() / (mode.v.norm() * scale)));
  d.uv_a = to_double(Real(mode.u.dot(mode.v)));
  if (u_b.size() > 0 && mode.kappa_sq > 0) {
    d.uv_b = to_double(Real(u_b.dot(v_b)));
    const Vector<Real> r = -(cov.h_ab.transpose() * (cov.g_ab * u_b)) - mode.kappa_sq * u_b;
    const Real denom = u_b.norm() * std::max(mode.kappa_sq, machine_epsilon<Real>());
    d.b_side_defect = to_double(Real(r.norm() / denom));
    const Real kappa = sqrt(mode.kappa_sq);
    const Vector<Real> u_back = -(cov.h_ab * v_b) / kappa;
    d.roundtrip_error = to_double(Real((u_back - mode.u).norm() / mode.u.norm()));
  }
  return d;
}

double turning_point(const std::vector<double>& u) {
  if (u.empty()) return 0.0;
  const double centre = 0.5 * static_cast<double>(u.size() - 1);
  double best = -1.0;
  for (double x : u) best = std::max(best, std::abs(x));
  const double tie = 1e-12 * best;
  double tp = centre + 1.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) >= best - tie) {
      tp = std::min(tp, std::abs(static_cast<double>(i) - centre));
    }
  }
  return tp;
}

std::vector<double> demodulate(const std::vector<double>& u) {
  std::vector<double> out(u);
  for (std::size_t i = 1; i < out.size(); i += 2) out[i] = -out[i];
  return out;
}

unsigned recommended_precision_bits(const CorrelationTable& table, const BlockPartition& part,
                                    double floor_target) {
  if (!(floor_target > 0.0)) throw DomainError("floor target must be positive");
  const BlockCovariance cov = extract_block(table, part);
  const double gnorm = cov.g_a.norm();
  const double hnorm = cov.h_a.norm();
  const double n = static_cast<double>(part.size);
  // Eigenvalues of a position block are bounded below by 1/(2 sqrt(1+alpha)).
  const double cond_g = gnorm * 2.0 * std::sqrt(2.0);
  const double needed = std::log2(n * gnorm * hnorm / floor_target) + 0.5 * std::log2(cond_g) + 32.0;
  if (needed <= 52.0 - 20.0) return kDoubleBits;
  return std::max(kDoubleBits + 11, static_cast<unsigned>(std::ceil(needed)));
}

#define HCHAIN_GAUSSIAN_INSTANTIATE(Real)                                                      \
  template BasicBlockCovariance<Real> extract_block(const BasicCorrelationTable<Real>&,        \
                                                    const BlockPartition&);                    \
  template BasicBlockCovariance<Real> extract_complement(const BasicCorrelationTable<Real>&,   \
                                                         const BlockPartition&);               \
  template std::array<ParitySector<Real>, 2> parity_sectors(const BasicBlockCovariance<Real>&); \
  template std::vector<ModeVectors<Real>> williamson_modes(const BasicBlockCovariance<Real>&,  \
                                                           Real*);                             \
  template std::pair<Vector<Real>, Vector<Real>> map_mode(const BasicBlockCovariance<Real>&,   \
                                                          const ModeVectors<Real>&);           \
  template SymplecticSpectrum symplectic_spectrum(const BasicBlockCovariance<Real>&);          \
  template std::vector<double> cross_spectrum(const BasicBlockCovariance<Real>&);              \
  template ModeDiagnostics mode_diagnostics(const BasicBlockCovariance<Real>&,                 \
                                            const ModeVectors<Real>&, const Vector<Real>&,     \
                                            const Vector<Real>&);
HCHAIN_GAUSSIAN_INSTANTIATE(double)
HCHAIN_GAUSSIAN_INSTANTIATE(Mp)
#undef HCHAIN_GAUSSIAN_INSTANTIATE

}  // namespace hchain
