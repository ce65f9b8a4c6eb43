#pragma once

// Reduced Gaussian state of a contiguous block of the chain: covariance
// blocks, parity sectors, symplectic spectrum and mode vectors.

#include "hchain/chain_model.hpp"
#include "hchain/precision.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace hchain {

/// Raised when a numerical stage produces an invalid state (for example a
/// symplectic eigenvalue clearly below 1/2). `stage()` names the step.
class NumericError : public std::runtime_error {
 public:
  NumericError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct BlockPartition {
  long block_start = 0;
  long size = 1;  // N_b
};

/// Throws DomainError unless 1 <= size <= n/2.
void validate_partition(const BlockPartition& part, long n);

enum class Side { block, complement };

/// Covariance blocks for one side of a bipartition. "a" is the side being
/// analyzed, "b" its complement; sites of each side are numbered in chain
/// order starting at the side's first site.
template <class Real>
struct BasicBlockCovariance {
  Matrix<Real> g_a, h_a;    // n_a x n_a
  Matrix<Real> g_ab, h_ab;  // n_a x n_b
  BlockPartition partition;
  Side side = Side::block;
  long chain_size = 0;

  long n_a() const { return g_a.rows(); }
  long n_b() const { return g_ab.cols(); }
};

using BlockCovariance = BasicBlockCovariance<double>;

template <class Real>
BasicBlockCovariance<Real> extract_block(const BasicCorrelationTable<Real>& table,
                                         const BlockPartition& part);
/// Same bipartition seen from the complement: "a" is the complement.
template <class Real>
BasicBlockCovariance<Real> extract_complement(const BasicCorrelationTable<Real>& table,
                                              const BlockPartition& part);

/// Reflection-parity sector of the analyzed side.
template <class Real>
struct ParitySector {
  int parity = +1;
  Matrix<Real> basis;  // n_a x n_s, orthonormal columns
  Matrix<Real> g, h;   // projected local blocks, n_s x n_s
  Matrix<Real> g_ab, h_ab;  // basis^T times cross blocks, n_s x n_b
};

/// Even sector first. The odd sector is empty when n_a == 1.
template <class Real>
std::array<ParitySector<Real>, 2> parity_sectors(const BasicBlockCovariance<Real>& cov);

/// One symplectic eigenvalue with its Williamson vectors on the analyzed side.
template <class Real>
struct ModeVectors {
  Real lambda_sq;
  Real kappa_sq;  // lambda^2 - 1/4, computed without cancellation
  Real lambda;
  Vector<Real> u;  // u^T G_A u = lambda, u.v = 1
  Vector<Real> v;  // v^T H_A v = lambda
  int parity = +1;
  bool degenerate = false;  // splitting to a neighbour below resolution
};

/// All n_a modes, sorted by decreasing kappa^2. The sign of u is fixed so
/// that its largest-magnitude entry is positive.
template <class Real>
std::vector<ModeVectors<Real>> williamson_modes(const BasicBlockCovariance<Real>& cov,
                                                Real* resolution_floor = nullptr);

/// Partner vectors on the other side: v_b = G_ab^T u / kappa,
/// u_b = -H_ab^T v / kappa. Requires kappa^2 > 0.
template <class Real>
std::pair<Vector<Real>, Vector<Real>> map_mode(const BasicBlockCovariance<Real>& cov,
                                               const ModeVectors<Real>& mode);

/// Eigenvalues kappa^2 of -H_ab G_ab^T in congruence-symmetrized form, decreasing.
template <class Real>
std::vector<double> cross_spectrum(const BasicBlockCovariance<Real>& cov);

/// Entrywise product u_i v_i.
std::vector<double> participation(const std::vector<double>& u, const std::vector<double>& v);

struct SymplecticSpectrum {
  std::vector<double> lambdas;  // decreasing
  std::vector<int> parities;
  std::vector<double> excess;    // lambda - 1/2
  std::vector<double> kappa_sq;  // lambda^2 - 1/4
};

template <class Real>
SymplecticSpectrum symplectic_spectrum(const BasicBlockCovariance<Real>& cov);

/// Residuals of one mode, evaluated at the working precision.
struct ModeDiagnostics {
  double eigen_defect = 0;   // |H_A G_A u - lambda^2 u| / (|u| max(1, lambda^2))
  double dual_defect = 0;    // |G_A H_A v - lambda^2 v| / (|v| max(1, lambda^2))
  double uv_a = 0;           // u.v on the analyzed side
  double uv_b = 0;           // u_b.v_b on the other side
  double b_side_defect = 0;  // |-H_ab^T G_ab u_b - kappa^2 u_b| / (|u_b| max(kappa^2, floor))
  double roundtrip_error = 0;  // |(-H_ab v_b / kappa) - u| / |u|
};

template <class Real>
ModeDiagnostics mode_diagnostics(const BasicBlockCovariance<Real>& cov,
                                 const ModeVectors<Real>& mode, const Vector<Real>& u_b,
                                 const Vector<Real>& v_b);

/// Index distance of the largest |entry| from the block centre (n-1)/2;
/// ties resolve to the entry nearest the centre.
double turning_point(const std::vector<double>& u);

/// Multiplies entry i by (-1)^i.
std::vector<double> demodulate(const std::vector<double>& u);

/// Bits of Mp precision needed to resolve excesses down to `floor_target`
/// for this bipartition; returns kDoubleBits when double suffices.
unsigned recommended_precision_bits(const CorrelationTable& table, const BlockPartition& part,
                                    double floor_target);

#define HCHAIN_GAUSSIAN_EXTERN(Real)                                                            \
  extern template BasicBlockCovariance<Real> extract_block(const BasicCorrelationTable<Real>&,  \
                                                           const BlockPartition&);              \
  extern template BasicBlockCovariance<Real> extract_complement(                                \
      const BasicCorrelationTable<Real>&, const BlockPartition&);                               \
  extern template std::array<ParitySector<Real>, 2> parity_sectors(                             \
      const BasicBlockCovariance<Real>&);                                                       \
  extern template std::vector<ModeVectors<Real>> williamson_modes(                              \
      const BasicBlockCovariance<Real>&, Real*);                                                \
  extern template std::pair<Vector<Real>, Vector<Real>> map_mode(                               \
      const BasicBlockCovariance<Real>&, const ModeVectors<Real>&);                             \
  extern template SymplecticSpectrum symplectic_spectrum(const BasicBlockCovariance<Real>&);    \
  extern template std::vector<double> cross_spectrum(const BasicBlockCovariance<Real>&);        \
  extern template ModeDiagnostics mode_diagnostics(const BasicBlockCovariance<Real>&,           \
                                                   const ModeVectors<Real>&,                    \
                                                   const Vector<Real>&, const Vector<Real>&);
HCHAIN_GAUSSIAN_EXTERN(double)
HCHAIN_GAUSSIAN_EXTERN(Mp)
#undef HCHAIN_GAUSSIAN_EXTERN

}  // namespace hchain
