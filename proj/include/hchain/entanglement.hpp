#pragma once

// Entropies of symplectic modes and full block-entanglement reports.

#include "hchain/chain_model.hpp"
#include "hchain/gaussian_core.hpp"

#include <vector>

namespace hchain {

/// (l+1/2)ln(l+1/2) - (l-1/2)ln(l-1/2); exactly 0 at l = 1/2.
double entropy_of_lambda(double lambda);
/// ln((l+1/2)/(l-1/2)); +infinity at l = 1/2.
double beta_of_lambda(double lambda);
/// Small-excess and large-lambda asymptotic forms, exact formula in between.
double entropy_expansions(double lambda);

/// Entropy as a function of the excess d = lambda - 1/2:
/// (1+d) log1p(d) - d ln d. Accurate for tiny d where lambda itself is not.
template <class Real>
Real entropy_from_excess(const Real& excess);
/// ln((1+d)/d).
template <class Real>
Real beta_from_excess(const Real& excess);

struct AnalysisOptions {
  Side side = Side::block;
  /// Modes with excess below this are treated as unentangled.
  double entangled_threshold = 1e-12;
  /// kDoubleBits selects the double path; more bits run the Mp path.
  unsigned precision_bits = kDoubleBits;
  RegimeThresholds regime;
};

struct ModePair {
  double lambda = 0.5;
  double excess = 0;  // lambda - 1/2
  double kappa = 0;
  double kappa_sq = 0;
  std::vector<double> u_a, v_a, u_b, v_b;
  int parity = +1;
  std::vector<double> participation_a;
  double turning_point = 0;
  double entropy = 0;
  double log_entropy = 0;  // ln(entropy), finite even when entropy underflows
  double beta = 0;
  bool degenerate = false;
  bool mapped = false;
  ModeDiagnostics diagnostics;
};

struct EntanglementReport {
  EntanglementReport(const ChainSpec& s, const BlockPartition& p) : spec(s), partition(p) {}

  ChainSpec spec;
  BlockPartition partition;
  Side side = Side::block;
  unsigned precision_bits = kDoubleBits;
  /// Excesses below this are not resolved at the working precision.
  double resolution_floor = 0;
  SymplecticSpectrum spectrum;
  /// Entangled modes by decreasing entropy, then even parity first, then turning point.
  std::vector<ModePair> modes;
  double total = 0;
  Regime regime = Regime::I;
  std::vector<double> per_mode_beta;
};

/// Full pipeline on a prebuilt table. For Real = Mp the caller holds a
/// PrecisionGuard for the whole call.
template <class Real>
EntanglementReport analyze_block(const BasicCorrelationTable<Real>& table, const BlockPartition& part,
                                 const AnalysisOptions& opts = {});

extern template EntanglementReport analyze_block(const BasicCorrelationTable<double>&,
                                                 const BlockPartition&, const AnalysisOptions&);
extern template EntanglementReport analyze_block(const BasicCorrelationTable<Mp>&,
                                                 const BlockPartition&, const AnalysisOptions&);

/// Builds the table at opts.precision_bits and runs analyze_block.
EntanglementReport analyze(const ChainSpec& spec, const BlockPartition& part,
                           const AnalysisOptions& opts = {});

}  // namespace hchain
