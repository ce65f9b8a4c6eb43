#pragma once

// Subcommand implementations. Each run_* function returns the rows it
// computed; each cmd_* function also writes the requested files into
// cfg.out_dir and returns a process exit code.

#include "hchain/cli/config.hpp"
#include "hchain/continuum.hpp"
#include "hchain/entanglement.hpp"

#include <array>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace hchain::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

/// Runs `body`, mapping configuration and domain errors to kExitConfig and
/// numerical failures to kExitNumeric (stage name written to `err`).
int run_guarded(const std::function<int()>& body, std::ostream& err);

/// Full-pipeline analysis of one coupling for several block sizes, sharing
/// the correlation table. With bits > kDoubleBits the caller must hold a
/// PrecisionGuard of that precision.
std::vector<EntanglementReport> analyze_sizes(const ChainSpec& spec, const std::vector<long>& sizes,
                                              long block_start, const AnalysisOptions& opts);

struct CorrelationRow {
  long l = 0;
  double g_n = 0, h_n = 0, g_inf = 0, h_inf = 0;
};
std::vector<CorrelationRow> run_correlations(const ChainSpec& spec, long lmax);
void write_correlations_csv(std::ostream& out, const std::vector<CorrelationRow>& rows);

struct SweepRow {
  double xi = 0;
  long n_b = 0;
  double total = 0;
  std::array<double, 4> e_modes{};
  Regime regime = Regime::I;
};
std::vector<SweepRow> run_entropy_sweep(const SweepConfig& cfg, long n);
void write_entropy_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

nlohmann::json modes_json(const EntanglementReport& report, long top_k);

struct ScalingRow {
  long n_b = 0;
  long m = 0;
  double mu_scaled = 0;
  double ln_e_over_nb = 0;
  double f_predicted = 0;
};
/// Residual-mode entropies for each N_b of cfg at one coupling, computed at a
/// precision chosen to resolve entropies down to about exp(-11 N_b).
std::vector<ScalingRow> run_scaling(const SweepConfig& cfg, const ChainSpec& spec);
void write_scaling_csv(std::ostream& out, const std::vector<ScalingRow>& rows);

struct RegimeMapRow {
  double xi = 0;
  long n_b = 0;
  double total = 0;
  double e_mode1 = 0;
  double e_mode2 = 0;
  double l_c = 0;
};
std::vector<RegimeMapRow> run_regime_map(const SweepConfig& cfg, long n);

struct SingleSiteRow {
  double xi = 0;
  long n = 0;
  double lambda = 0;
  double entropy = 0;
  std::array<double, 3> entropy_branch{};  // I, II, III formulas
  Regime regime = Regime::I;
  RegimeScales scales;
};
std::vector<SingleSiteRow> run_single_site(const SweepConfig& cfg, long n);
void write_single_site_csv(std::ostream& out, const std::vector<SingleSiteRow>& rows);

/// Grid-aligned separations only; misaligned x is a ConfigError.
std::vector<CorrespondencePoint> run_continuum_check(const SweepConfig& cfg);
void write_continuum_csv(std::ostream& out, const std::vector<CorrespondencePoint>& rows);

int cmd_correlations(const SweepConfig& cfg, std::ostream& log);
int cmd_entropy_sweep(const SweepConfig& cfg, std::ostream& log);
int cmd_modes(const SweepConfig& cfg, std::ostream& log);
int cmd_scaling(const SweepConfig& cfg, std::ostream& log);
int cmd_regime_map(const SweepConfig& cfg, std::ostream& log);
int cmd_single_site(const SweepConfig& cfg, std::ostream& log);
int cmd_fit_slope(const SweepConfig& cfg, std::ostream& out);
int cmd_continuum_check(const SweepConfig& cfg, std::ostream& log);

}  // namespace hchain::cli
