#pragma once

// Sweep configuration: a flat key=value file with [sections], overridden by
// command-line flags.
//
// Grammar:
//   file    := line*
//   line    := blank | comment | section | entry
//   comment := ('#' | ';') text
//   section := '[' name ']'
//   entry   := key '=' value        (key is looked up as "section.key")
// Lists are comma separated; "a:b:s" expands to a, a+s, ... <= b, and
// "a*f:b" to the geometric sequence a, a f, ... <= b.

#include "hchain/chain_model.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hchain::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigFile {
  std::map<std::string, std::string> values;  // "section.key" -> value
  std::map<std::string, int> lines;           // key -> line number, for messages
};

ConfigFile parse_config(const std::string& text);
ConfigFile load_config(const std::string& path);

std::vector<double> parse_real_list(const std::string& text);
std::vector<long> parse_int_list(const std::string& text);

struct SweepConfig {
  std::vector<long> n_values{2048};
  std::vector<double> xi_values;
  std::vector<double> alpha_values;
  std::vector<long> nb_values{8, 16, 32, 64};
  std::vector<long> block_starts{0};

  std::string out_dir = ".";
  bool emit_csv = true;
  bool emit_json = false;
  bool emit_svg = false;

  RegimeThresholds regime;
  double zeta = 0.45;
  double entangled_threshold = 1e-12;
  unsigned precision_bits = 0;  // 0 selects per command
  unsigned workers = 1;

  long lmax = 64;
  long top_k = 8;

  double mu = 1.0;
  double length = 10.0;
  std::vector<double> x_values;

  std::string csv_path;
  std::string x_col = "N_b";
  std::string y_col = "total";
  bool x_log = true;
};

/// Applies every recognised key; unknown keys are a ConfigError.
void apply_config(const ConfigFile& file, SweepConfig& cfg);

/// Sets `emit_*` from "csv,json,svg".
void apply_emit(const std::string& list, SweepConfig& cfg);

/// Coupling grid as chain specs for one chain size (xi or alpha values).
std::vector<ChainSpec> coupling_grid(const SweepConfig& cfg, long n);

/// Throws ConfigError when a grid is empty or a value is out of domain.
void validate(const SweepConfig& cfg);

}  // namespace hchain::cli
