#include "hchain/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace hchain::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double to_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

long to_int(const std::string& s) {
  const double v = to_real(s);
  if (v != std::floor(v)) throw ConfigError("not an integer: '" + s + "'");
  return static_cast<long>(v);
}

bool to_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError("not a boolean: '" + s + "'");
}

}  // namespace

ConfigFile parse_config(const std::string& text) {
  ConfigFile cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (const auto hash = value.find(" #"); hash != std::string::npos) value = trim(value.substr(0, hash));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    const std::string full = section.empty() ? key : section + "." + key;
    cfg.values[full] = value;
    cfg.lines[full] = lineno;
  }
  return cfg;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split(text, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      out.push_back(to_real(item));
      continue;
    }
    const std::string head = item.substr(0, colon);
    const auto parts = split(item.substr(colon + 1), ':');
    if (const auto star = head.find('*'); star != std::string::npos) {
      const double a = to_real(trim(head.substr(0, star)));
      const double f = to_real(trim(head.substr(star + 1)));
      if (parts.size() != 1 || !(a > 0) || !(f > 1)) throw ConfigError("bad geometric range '" + item + "'");
      const double b = to_real(parts[0]);
      for (double v = a; v <= b * (1 + 1e-12); v *= f) out.push_back(v);
      continue;
    }
    if (parts.size() != 2) throw ConfigError("bad range '" + item + "' (want start:stop:step)");
    const double a = to_real(trim(head));
    const double b = to_real(parts[0]);
    const double s = to_real(parts[1]);
    if (!(s > 0) || b < a) throw ConfigError("bad range '" + item + "'");
    const long count = static_cast<long>(std::floor((b - a) / s + 1e-9)) + 1;
    if (count > 1'000'000) throw ConfigError("range too long '" + item + "'");
    for (long i = 0; i < count; ++i) out.push_back(a + static_cast<double>(i) * s);
  }
  return out;
}

std::vector<long> parse_int_list(const std::string& text) {
  std::vector<long> out;
  for (double v : parse_real_list(text)) {
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9 * std::max(1.0, std::abs(v))) {
      throw ConfigError("expected integers in '" + text + "'");
    }
    out.push_back(static_cast<long>(r));
  }
  return out;
}

void apply_emit(const std::string& list, SweepConfig& cfg) {
  cfg.emit_csv = cfg.emit_json = cfg.emit_svg = false;
  for (const std::string& item : split(list, ',')) {
    if (item == "csv") {
      cfg.emit_csv = true;
    } else if (item == "json") {
      cfg.emit_json = true;
    } else if (item == "svg") {
      cfg.emit_svg = true;
    } else if (!item.empty()) {
      throw ConfigError("unknown emit format '" + item + "'");
    }
  }
}

void apply_config(const ConfigFile& file, SweepConfig& cfg) {
  for (const auto& [key, value] : file.values) {
    try {
      if (key == "grid.n") {
        cfg.n_values = parse_int_list(value);
      } else if (key == "grid.xi") {
        cfg.xi_values = parse_real_list(value);
      } else if (key == "grid.alpha") {
        cfg.alpha_values = parse_real_list(value);
      } else if (key == "grid.nb") {
        cfg.nb_values = parse_int_list(value);
      } else if (key == "grid.block_start") {
        cfg.block_starts = parse_int_list(value);
      } else if (key == "output.dir") {
        cfg.out_dir = value;
      } else if (key == "output.emit") {
        apply_emit(value, cfg);
      } else if (key == "thresholds.weak_factor") {
        cfg.regime.weak_factor = to_real(value);
      } else if (key == "thresholds.zeta") {
        cfg.zeta = to_real(value);
      } else if (key == "thresholds.entangled") {
        cfg.entangled_threshold = to_real(value);
      } else if (key == "thresholds.precision_bits") {
        cfg.precision_bits = static_cast<unsigned>(to_int(value));
      } else if (key == "run.workers") {
        cfg.workers = static_cast<unsigned>(to_int(value));
      } else if (key == "correlations.lmax") {
        cfg.lmax = to_int(value);
      } else if (key == "modes.top_k") {
        cfg.top_k = to_int(value);
      } else if (key == "continuum.mu") {
        cfg.mu = to_real(value);
      } else if (key == "continuum.L") {
        cfg.length = to_real(value);
      } else if (key == "continuum.x") {
        cfg.x_values = parse_real_list(value);
      } else if (key == "fit.csv") {
        cfg.csv_path = value;
      } else if (key == "fit.x_col") {
        cfg.x_col = value;
      } else if (key == "fit.y_col") {
        cfg.y_col = value;
      } else if (key == "fit.x_log") {
        cfg.x_log = to_bool(value);
      } else {
        throw ConfigError("unknown key");
      }
    } catch (const ConfigError& e) {
      const auto it = file.lines.find(key);
      const std::string where = it != file.lines.end() ? "line " + std::to_string(it->second) + ": " : "";
      throw ConfigError(where + key + ": " + e.what());
    }
  }
}

std::vector<ChainSpec> coupling_grid(const SweepConfig& cfg, long n) {
  std::vector<ChainSpec> out;
  try {
    for (double xi : cfg.xi_values) out.push_back(ChainSpec::from_xi(n, xi));
    for (double a : cfg.alpha_values) out.push_back(ChainSpec::from_alpha(n, a));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return out;
}

void validate(const SweepConfig& cfg) {
  if (!cfg.xi_values.empty() && !cfg.alpha_values.empty()) {
    throw ConfigError("xi and alpha grids are mutually exclusive");
  }
  if (cfg.n_values.empty()) throw ConfigError("empty N grid");
  for (long n : cfg.n_values) {
    if (n < 2) throw ConfigError("N must be >= 2");
  }
  for (long nb : cfg.nb_values) {
    if (nb < 1) throw ConfigError("N_b must be >= 1");
  }
  for (double xi : cfg.xi_values) {
    if (!(xi > 0) || !std::isfinite(xi)) throw ConfigError("xi must be positive");
  }
  for (double a : cfg.alpha_values) {
    if (!(a > 0 && a < 1)) throw ConfigError("alpha must lie in (0, 1)");
  }
  if (!(cfg.zeta > 0 && cfg.zeta < 1)) throw ConfigError("zeta must lie in (0, 1)");
  if (!(cfg.regime.weak_factor > 0)) throw ConfigError("weak_factor must be positive");
  if (!(cfg.entangled_threshold > 0)) throw ConfigError("entangled threshold must be positive");
  if (cfg.workers < 1 || cfg.workers > 256) throw ConfigError("workers must lie in [1, 256]");
  if (cfg.precision_bits != 0 && (cfg.precision_bits < kDoubleBits || cfg.precision_bits > 100000)) {
    throw ConfigError("precision_bits must be 0 or in [53, 100000]");
  }
  if (cfg.lmax < 0) throw ConfigError("lmax must be >= 0");
  if (cfg.top_k < 1) throw ConfigError("top_k must be >= 1");
  if (!(cfg.mu > 0)) throw ConfigError("mu must be positive");
  if (!(cfg.length > 0)) throw ConfigError("L must be positive");
}

}  // namespace hchain::cli
