#include "hchain/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace hchain::cli;

namespace {

struct Flags {
  std::optional<std::string> config, n, xi, alpha, nb, block_start, out_dir, emit, x, csv, x_col, y_col;
  std::optional<double> zeta, mu, length;
  std::optional<unsigned> workers, precision_bits;
  std::optional<long> lmax, top_k;
  bool linear_x = false;
};

void add_flags(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config, "Config file (key = value with [sections])");
  app.add_option("--n", f.n, "Chain sizes, e.g. 1024,2048 or 256*2:4096");
  auto* xi = app.add_option("--xi", f.xi, "Couplings as xi values, e.g. 0.5:8:0.5");
  auto* alpha = app.add_option("--alpha", f.alpha, "Couplings as alpha values");
  xi->excludes(alpha);
  app.add_option("--nb", f.nb, "Block sizes");
  app.add_option("--block-start", f.block_start, "First site of the block");
  app.add_option("--out-dir", f.out_dir, "Output directory");
  app.add_option("--emit", f.emit, "Output formats: csv,json,svg");
  app.add_option("--zeta", f.zeta, "Residual-mode model constant");
  app.add_option("--workers", f.workers, "Worker threads");
  app.add_option("--precision-bits", f.precision_bits, "Working precision in bits (53 = double)");
  app.add_option("--lmax", f.lmax, "Largest separation for correlations");
  app.add_option("--top-k", f.top_k, "Modes written by the modes command");
  app.add_option("--mu", f.mu, "Continuum mass");
  app.add_option("--L", f.length, "Continuum circumference");
  app.add_option("--x", f.x, "Continuum separations");
  app.add_option("--csv", f.csv, "Input CSV for fit-slope");
  app.add_option("--x-col", f.x_col, "Abscissa column for fit-slope");
  app.add_option("--y-col", f.y_col, "Ordinate column for fit-slope");
  app.add_flag("--linear-x", f.linear_x, "Fit against x instead of ln x");
}

SweepConfig build_config(const std::string& command, const Flags& f) {
  SweepConfig cfg;
  if (command == "single-site") {
    cfg.n_values = {10000};
    cfg.xi_values = {0.5, 1, 2, 4, 8, 16, 32};
  } else if (command == "continuum-check") {
    cfg.n_values = {256, 512, 1024};
  } else if (command == "correlations" || command == "modes" || command == "scaling") {
    cfg.xi_values = {3};
  } else {
    cfg.xi_values = {0.5, 1, 2, 3, 4, 6, 8};
  }
  if (command == "scaling") {
    cfg.n_values = {1024};
    cfg.nb_values = {16, 24, 32};
  }
  if (command == "modes") cfg.nb_values = {32};
  if (f.config) {
    const ConfigFile file = load_config(*f.config);
    if (file.values.count("grid.alpha") && !file.values.count("grid.xi")) cfg.xi_values.clear();
    apply_config(file, cfg);
  }
  if (f.n) cfg.n_values = parse_int_list(*f.n);
  if (f.xi) {
    cfg.xi_values = parse_real_list(*f.xi);
    cfg.alpha_values.clear();
  }
  if (f.alpha) {
    cfg.alpha_values = parse_real_list(*f.alpha);
    cfg.xi_values.clear();
  }
  if (f.nb) cfg.nb_values = parse_int_list(*f.nb);
  if (f.block_start) cfg.block_starts = parse_int_list(*f.block_start);
  if (f.out_dir) cfg.out_dir = *f.out_dir;
  if (f.emit) apply_emit(*f.emit, cfg);
  if (f.zeta) cfg.zeta = *f.zeta;
  if (f.workers) cfg.workers = *f.workers;
  if (f.precision_bits) cfg.precision_bits = *f.precision_bits;
  if (f.lmax) cfg.lmax = *f.lmax;
  if (f.top_k) cfg.top_k = *f.top_k;
  if (f.mu) cfg.mu = *f.mu;
  if (f.length) cfg.length = *f.length;
  if (f.x) cfg.x_values = parse_real_list(*f.x);
  if (f.csv) cfg.csv_path = *f.csv;
  if (f.x_col) cfg.x_col = *f.x_col;
  if (f.y_col) cfg.y_col = *f.y_col;
  if (f.linear_x) cfg.x_log = false;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block entanglement in harmonic chains"};
  app.require_subcommand(1, 1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"correlations", "Finite and infinite-chain correlators g_l, h_l"},
      {"entropy-sweep", "Total and per-mode entropies over a (coupling, N_b) grid"},
      {"modes", "Mode pairs of one block as JSON"},
      {"scaling", "Residual-mode entropies against the continuum prediction"},
      {"regime-map", "Total entropy over the (coupling, N_b) plane"},
      {"single-site", "Single-oscillator entropy and its regime branches"},
      {"fit-slope", "Least-squares slope of one CSV column against another"},
      {"continuum-check", "Lattice correlators against the continuum field"},
  };
  for (const auto& [name, help] : commands) add_flags(*app.add_subcommand(name, help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  return run_guarded(
      [&] {
        const SweepConfig cfg = build_config(command, flags);
        if (command == "correlations") return cmd_correlations(cfg, std::cerr);
        if (command == "entropy-sweep") return cmd_entropy_sweep(cfg, std::cerr);
        if (command == "modes") return cmd_modes(cfg, std::cerr);
        if (command == "scaling") return cmd_scaling(cfg, std::cerr);
        if (command == "regime-map") return cmd_regime_map(cfg, std::cerr);
        if (command == "single-site") return cmd_single_site(cfg, std::cerr);
        if (command == "fit-slope") return cmd_fit_slope(cfg, std::cout);
        return cmd_continuum_check(cfg, std::cerr);
      },
      std::cerr);
}
