#include "hchain/cli/commands.hpp"

#include "hchain/analytics.hpp"
#include "hchain/cli/csv.hpp"
#include "hchain/cli/fit.hpp"
#include "hchain/cli/svg.hpp"
#include "hchain/cli/worker_pool.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace hchain::cli {
namespace {

namespace fs = std::filesystem;

std::string ftoa(double v) { return format_real(v); }

fs::path output_path(const SweepConfig& cfg, const std::string& name) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
  return fs::path(cfg.out_dir) / name;
}

void write_file(const fs::path& path, const std::string& content, std::ostream& log) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << content;
  log << "wrote " << path.string() << '\n';
}

unsigned working_bits(const SweepConfig& cfg) {
  return cfg.precision_bits == 0 ? kDoubleBits : cfg.precision_bits;
}

AnalysisOptions options_for(const SweepConfig& cfg, unsigned bits) {
  AnalysisOptions o;
  o.entangled_threshold = cfg.entangled_threshold;
  o.precision_bits = bits;
  o.regime = cfg.regime;
  return o;
}

void check_sizes(const std::vector<long>& sizes, long n) {
  if (sizes.empty()) throw ConfigError("empty N_b grid");
  for (long nb : sizes) {
    if (nb < 1 || 2 * nb > n) {
      throw ConfigError("N_b=" + std::to_string(nb) + " outside [1, N/2] for N=" + std::to_string(n));
    }
  }
}

double mode_entropy(const EntanglementReport& r, std::size_t k) {
  return k < r.modes.size() ? r.modes[k].entropy : 0.0;
}

// Reports for every (coupling, N_b) pair, coupling-major, under one precision.
std::vector<std::vector<EntanglementReport>> analyze_grid(const SweepConfig& cfg,
                                                          const std::vector<ChainSpec>& specs,
                                                          const std::vector<long>& sizes,
                                                          unsigned bits) {
  std::optional<PrecisionGuard> guard;
  if (bits > kDoubleBits) guard.emplace(bits);
  const AnalysisOptions opts = options_for(cfg, bits);
  const long start = cfg.block_starts.empty() ? 0 : cfg.block_starts.front();
  return parallel_map<std::vector<EntanglementReport>>(
      specs.size(), cfg.workers,
      [&](std::size_t i) { return analyze_sizes(specs[i], sizes, start, opts); });
}

nlohmann::json vec_json(const std::vector<double>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericError& e) {
    err << "numeric failure in stage '" << e.stage() << "': " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ConvergenceError& e) {
    err << "numeric failure in stage 'series': " << e.what() << '\n';
    return kExitNumeric;
  }
}

std::vector<EntanglementReport> analyze_sizes(const ChainSpec& spec, const std::vector<long>& sizes,
                                              long block_start, const AnalysisOptions& opts) {
  std::vector<EntanglementReport> out;
  if (opts.precision_bits <= kDoubleBits) {
    const CorrelationTable table = build_correlations<double>(spec);
    for (long nb : sizes) out.push_back(analyze_block(table, BlockPartition{block_start, nb}, opts));
  } else {
    const auto table = build_correlations<Mp>(spec);
    for (long nb : sizes) out.push_back(analyze_block(table, BlockPartition{block_start, nb}, opts));
  }
  return out;
}

std::vector<CorrelationRow> run_correlations(const ChainSpec& spec, long lmax) {
  if (lmax < 0 || lmax >= spec.n()) throw ConfigError("lmax must lie in [0, N-1]");
  const CorrelationTable table = build_correlations<double>(spec);
  std::vector<CorrelationRow> rows;
  for (long l = 0; l <= lmax; ++l) {
    rows.push_back(CorrelationRow{l, table.g_at(l), table.h_at(l), g_infinite(l, spec), h_infinite(l, spec)});
  }
  return rows;
}

void write_correlations_csv(std::ostream& out, const std::vector<CorrelationRow>& rows) {
  CsvWriter w(out, {"l", "g_N", "h_N", "g_inf", "h_inf"});
  for (const auto& r : rows) {
    w.row({std::to_string(r.l), ftoa(r.g_n), ftoa(r.h_n), ftoa(r.g_inf), ftoa(r.h_inf)});
  }
}

std::vector<SweepRow> run_entropy_sweep(const SweepConfig& cfg, long n) {
  check_sizes(cfg.nb_values, n);
  const auto specs = coupling_grid(cfg, n);
  if (specs.empty()) throw ConfigError("empty coupling grid");
  const auto reports = analyze_grid(cfg, specs, cfg.nb_values, working_bits(cfg));
  std::vector<SweepRow> rows;
  for (const auto& per_spec : reports) {
    for (const auto& r : per_spec) {
      SweepRow row;
      row.xi = r.spec.xi();
      row.n_b = r.partition.size;
      row.total = r.total;
      for (std::size_t k = 0; k < 4; ++k) row.e_modes[k] = mode_entropy(r, k);
      row.regime = r.regime;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_entropy_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  CsvWriter w(out, {"xi", "N_b", "total", "E_mode1", "E_mode2", "E_mode3", "E_mode4", "regime"});
  for (const auto& r : rows) {
    w.row({ftoa(r.xi), std::to_string(r.n_b), ftoa(r.total), ftoa(r.e_modes[0]), ftoa(r.e_modes[1]),
           ftoa(r.e_modes[2]), ftoa(r.e_modes[3]), std::string(regime_name(r.regime))});
  }
}

nlohmann::json modes_json(const EntanglementReport& report, long top_k) {
  nlohmann::json j;
  j["spec"] = {{"N", report.spec.n()},
               {"xi", report.spec.xi()},
               {"alpha", report.spec.alpha()},
               {"z", report.spec.z()},
               {"mu_aux", report.spec.mu_aux()}};
  j["partition"] = {{"block_start", report.partition.block_start}, {"N_b", report.partition.size}};
  j["regime"] = std::string(regime_name(report.regime));
  j["precision_bits"] = report.precision_bits;
  nlohmann::json modes = nlohmann::json::array();
  const std::size_t count = std::min<std::size_t>(report.modes.size(), static_cast<std::size_t>(top_k));
  for (std::size_t k = 0; k < count; ++k) {
    const ModePair& m = report.modes[k];
    modes.push_back({{"lambda", m.lambda},
                     {"kappa", m.kappa},
                     {"parity", m.parity},
                     {"entropy", m.entropy},
                     {"beta", m.beta},
                     {"turning_point", m.turning_point},
                     {"u_A", vec_json(m.u_a)},
                     {"v_A", vec_json(m.v_a)},
                     {"u_B", vec_json(m.u_b)},
                     {"v_B", vec_json(m.v_b)},
                     {"participation_A", vec_json(m.participation_a)}});
  }
  j["modes"] = modes;
  j["total"] = report.total;
  return j;
}

std::vector<ScalingRow> run_scaling(const SweepConfig& cfg, const ChainSpec& spec) {
  check_sizes(cfg.nb_values, spec.n());
  unsigned bits = cfg.precision_bits;
  double threshold = cfg.entangled_threshold;
  {
    const CorrelationTable table = build_correlations<double>(spec);
    for (long nb : cfg.nb_values) {
      const double floor = std::max(1e-300, std::exp(-11.0 * static_cast<double>(nb)));
      threshold = std::min(threshold, floor);
      if (cfg.precision_bits == 0) {
        bits = std::max(bits, recommended_precision_bits(table, BlockPartition{0, nb}, floor));
      }
    }
  }
  SweepConfig local = cfg;
  local.entangled_threshold = threshold;
  const auto reports = analyze_grid(local, {spec}, cfg.nb_values, std::max(bits, kDoubleBits));
  std::vector<ScalingRow> rows;
  for (const auto& r : reports.front()) {
    const long nb = r.partition.size;
    for (std::size_t k = 1; k < r.modes.size(); ++k) {
      const long m = static_cast<long>(k) + 1;
      ScalingRow row;
      row.n_b = nb;
      row.m = m;
      row.mu_scaled = static_cast<double>(m) / static_cast<double>(nb);
      row.ln_e_over_nb = r.modes[k].log_entropy / static_cast<double>(nb);
      row.f_predicted = quantize_residual(m, ResidualModel{cfg.zeta, nb}).f;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_scaling_csv(std::ostream& out, const std::vector<ScalingRow>& rows) {
  CsvWriter w(out, {"N_b", "m", "m/N_b", "ln_E/N_b", "f_predicted"});
  for (const auto& r : rows) {
    w.row({std::to_string(r.n_b), std::to_string(r.m), ftoa(r.mu_scaled), ftoa(r.ln_e_over_nb),
           ftoa(r.f_predicted)});
  }
}

std::vector<RegimeMapRow> run_regime_map(const SweepConfig& cfg, long n) {
  check_sizes(cfg.nb_values, n);
  const auto specs = coupling_grid(cfg, n);
  if (specs.empty()) throw ConfigError("empty coupling grid");
  const auto reports = analyze_grid(cfg, specs, cfg.nb_values, working_bits(cfg));
  std::vector<RegimeMapRow> rows;
  for (const auto& per_spec : reports) {
    for (const auto& r : per_spec) {
      rows.push_back(RegimeMapRow{r.spec.xi(), r.partition.size, r.total, mode_entropy(r, 0),
                                  mode_entropy(r, 1), regime_scales(r.spec).l_c});
    }
  }
  return rows;
}

std::vector<SingleSiteRow> run_single_site(const SweepConfig& cfg, long n) {
  const auto specs = coupling_grid(cfg, n);
  if (specs.empty()) throw ConfigError("empty coupling grid");
  const auto reports = analyze_grid(cfg, specs, {1}, working_bits(cfg));
  std::vector<SingleSiteRow> rows;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const EntanglementReport& r = reports[i].front();
    SingleSiteRow row;
    row.xi = specs[i].xi();
    row.n = n;
    row.lambda = r.spectrum.lambdas.front();
    row.entropy = entropy_from_excess(std::max(0.0, r.spectrum.excess.front()));
    row.entropy_branch = {single_osc_entropy(specs[i], Regime::I), single_osc_entropy(specs[i], Regime::II),
                          single_osc_entropy(specs[i], Regime::III)};
    row.regime = r.regime;
    row.scales = regime_scales(specs[i]);
    rows.push_back(row);
  }
  return rows;
}

void write_single_site_csv(std::ostream& out, const std::vector<SingleSiteRow>& rows) {
  CsvWriter w(out, {"xi", "N", "lambda", "entropy", "entropy_I", "entropy_II", "entropy_III", "regime",
                    "l_c", "N_t", "N_c"});
  for (const auto& r : rows) {
    w.row({ftoa(r.xi), std::to_string(r.n), ftoa(r.lambda), ftoa(r.entropy), ftoa(r.entropy_branch[0]),
           ftoa(r.entropy_branch[1]), ftoa(r.entropy_branch[2]), std::string(regime_name(r.regime)),
           ftoa(r.scales.l_c), ftoa(r.scales.N_t), ftoa(r.scales.N_c)});
  }
}

std::vector<CorrespondencePoint> run_continuum_check(const SweepConfig& cfg) {
  std::vector<double> xs = cfg.x_values;
  if (xs.empty()) xs = {0.3125, 0.625, 1.25, 2.5};
  std::vector<std::pair<double, long>> items;
  for (double x : xs) {
    for (long n : cfg.n_values) {
      const double pos = std::abs(x) * static_cast<double>(n) / cfg.length;
      if (x == 0.0 || std::abs(pos - std::round(pos)) > 1e-9) {
        throw ConfigError("x=" + format_real(x) + " is not on the lattice for N=" + std::to_string(n));
      }
      items.emplace_back(x, n);
    }
  }
  return parallel_map<CorrespondencePoint>(items.size(), cfg.workers, [&](std::size_t i) {
    return correspondence_check(ContinuumSpec{cfg.mu, cfg.length, items[i].second}, items[i].first);
  });
}

void write_continuum_csv(std::ostream& out, const std::vector<CorrespondencePoint>& rows) {
  CsvWriter w(out, {"x", "N", "g_discrete", "g_cont", "rel_err", "h_discrete", "h_cont", "rel_err_h"});
  for (const auto& p : rows) {
    w.row({ftoa(p.x), std::to_string(p.n_sites), ftoa(p.g_discrete), ftoa(p.g_continuum), ftoa(p.rel_err_g),
           ftoa(p.h_discrete), ftoa(p.h_continuum), ftoa(p.rel_err_h)});
  }
}

int cmd_correlations(const SweepConfig& cfg, std::ostream& log) {
  validate(cfg);
  const auto specs = coupling_grid(cfg, cfg.n_values.front());
  if (specs.size() != 1) throw ConfigError("correlations takes exactly one coupling");
  const auto rows = run_correlations(specs.front(), cfg.lmax);
  if (cfg.emit_csv) {
    std::ostringstream s;
    write_correlations_csv(s, rows);
    write_file(output_path(cfg, "correlations.csv"), s.str(), log);
  }
  if (cfg.emit_svg) {
    Series g{"g_N", {}, {}}, h{"-h_N", {}, {}};
    for (const auto& r : rows) {
      g.x.push_back(static_cast<double>(r.l));
      g.y.push_back(r.g_n);
      h.x.push_back(static_cast<double>(r.l));
      h.y.push_back(-r.h_n);
    }
    write_file(output_path(cfg, "correlations.svg"), svg_line_plot("Correlations", "l", "value", {g, h}), log);
  }
  return kExitOk;
}

int cmd_entropy_sweep(const SweepConfig& cfg, std::ostream& log) {
  validate(cfg);
  for (long n : cfg.n_values) {
    const auto rows = run_entropy_sweep(cfg, n);
    const std::string stem = "entropy_sweep_N" + std::to_string(n);
    if (cfg.emit_csv) {
      std::ostringstream s;
      write_entropy_sweep_csv(s, rows);
      write_file(output_path(cfg, stem + ".csv"), s.str(), log);
    }
    if (cfg.emit_svg) {
      std::map<long, Series> by_nb;
      for (const auto& r : rows) {
        Series& ser = by_nb[r.n_b];
        ser.name = "N_b=" + std::to_string(r.n_b);
        ser.x.push_back(r.xi);
        ser.y.push_back(r.total);
      }
      std::vector<Series> series;
      for (auto& [nb, ser] : by_nb) series.push_back(ser);
      write_file(output_path(cfg, stem + ".svg"),
                 svg_line_plot("Total entanglement, N=" + std::to_string(n), "xi", "total", series), log);
    }
  }
  return kExitOk;
}

int cmd_modes(const SweepConfig& cfg, std::ostream& log) {
  validate(cfg);
  const long n = cfg.n_values.front();
  const auto specs = coupling_grid(cfg, n);
  if (specs.size() != 1) throw ConfigError("modes takes exactly one coupling");
  check_sizes({cfg.nb_values.front()}, n);
  const auto reports = analyze_grid(cfg, specs, {cfg.nb_values.front()}, working_bits(cfg));
  const EntanglementReport& r = reports.front().front();
  write_file(output_path(cfg, "modes.json"), modes_json(r, cfg.top_k).dump(2) + "\n", log);
  if (cfg.emit_svg) {
    std::vector<Series> part, shape;
    const std::size_t count = std::min<std::size_t>(r.modes.size(), static_cast<std::size_t>(cfg.top_k));
    for (std::size_t k = 0; k < count; ++k) {
      const ModePair& m = r.modes[k];
      Series p{"m=" + std::to_string(k + 1), {}, m.participation_a};
      Series s{"m=" + std::to_string(k + 1), {}, m.u_a};
      for (std::size_t i = 0; i < m.u_a.size(); ++i) {
        p.x.push_back(static_cast<double>(i));
        s.x.push_back(static_cast<double>(i));
      }
      part.push_back(std::move(p));
      shape.push_back(std::move(s));
    }
    write_file(output_path(cfg, "modes_participation.svg"),
               svg_line_plot("Mode participation", "site", "u_i v_i", part), log);
    write_file(output_path(cfg, "modes_shapes.svg"), svg_line_plot("Mode shapes", "site", "u_i", shape), log);
  }
  return kExitOk;
}

int cmd_scaling(const SweepConfig& cfg, std::ostream& log) {
  validate(cfg);
  const auto specs = coupling_grid(cfg, cfg.n_values.front());
  if (specs.size() != 1) throw ConfigError("scaling takes exactly one coupling");
  const auto rows = run_scaling(cfg, specs.front());
  if (cfg.emit_csv) {
    std::ostringstream s;
    write_scaling_csv(s, rows);
    write_file(output_path(cfg, "scaling.csv"), s.str(), log);
  }
  if (cfg.emit_svg) {
    std::map<long, Series> by_nb;
    Series pred{"prediction", {}, {}};
    for (const auto& r : rows) {
      Series& ser = by_nb[r.n_b];
      ser.name = "N_b=" + std::to_string(r.n_b);
      ser.x.push_back(r.mu_scaled);
      ser.y.push_back(r.ln_e_over_nb);
    }
    for (int i = 1; i <= 100; ++i) {
      const double mu = i / 100.0;
      pred.x.push_back(mu);
      pred.y.push_back(-0.5 * special::kPi * special::kPi * solve_quantization(mu, cfg.zeta));
    }
    std::vector<Series> series;
    for (auto& [nb, ser] : by_nb) series.push_back(ser);
    series.push_back(pred);
    write_file(output_path(cfg, "scaling.svg"), svg_line_plot("Scaling collapse", "m/N_b", "ln E / N_b", series),
               log);
  }
  return kExitOk;
}

int cmd_regime_map(const SweepConfig& cfg, std::ostream& log) {
  validate(cfg);
  const long n = cfg.n_values.front();
  const auto rows = run_regime_map(cfg, n);
  if (cfg.emit_csv) {
    std::ostringstream s, m;
    CsvWriter w(s, {"xi", "N_b", "total"});
    CsvWriter wm(m, {"xi", "N_b", "E_mode1", "E_mode2", "l_c"});
    for (const auto& r : rows) {
      w.row({ftoa(r.xi), std::to_string(r.n_b), ftoa(r.total)});
      wm.row({ftoa(r.xi), std::to_string(r.n_b), ftoa(r.e_mode1), ftoa(r.e_mode2), ftoa(r.l_c)});
    }
    write_file(output_path(cfg, "regime_map.csv"), s.str(), log);
    write_file(output_path(cfg, "regime_modes.csv"), m.str(), log);
  }
  if (cfg.emit_svg) {
    std::vector<double> xs, ys;
    for (const auto& spec : coupling_grid(cfg, n)) xs.push_back(spec.xi());
    for (long nb : cfg.nb_values) ys.push_back(static_cast<double>(nb));
    if (xs.size() >= 2 && ys.size() >= 2) {
      std::vector<std::vector<double>> total(ys.size(), std::vector<double>(xs.size()));
      double vmax = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < ys.size(); ++j) {
          total[j][i] = rows[i * ys.size() + j].total;
          vmax = std::max(vmax, total[j][i]);
        }
      }
      std::vector<double> levels;
      for (int k = 1; k <= 6; ++k) levels.push_back(vmax * k / 7.0);
      Series lc{"l_c = N_b", {}, {}};
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double l = rows[i * ys.size()].l_c;
        if (l >= ys.front() && l <= ys.back()) {
          lc.x.push_back(xs[i]);
          lc.y.push_back(l);
        }
      }
      write_file(output_path(cfg, "regime_map.svg"),
                 svg_level_sets("Total entanglement, N=" + std::to_string(n), "xi", "N_b", xs, ys, total, levels,
                                {lc}),
                 log);
    }
  }
  return kExitOk;
}

int cmd_single_site(const SweepConfig& cfg, std::ostream& log) {
  validate(cfg);
  for (long n : cfg.n_values) {
    const auto rows = run_single_site(cfg, n);
    const std::string stem = "single_site_N" + std::to_string(n);
    if (cfg.emit_csv) {
      std::ostringstream s;
      write_single_site_csv(s, rows);
      write_file(output_path(cfg, stem + ".csv"), s.str(), log);
    }
    if (cfg.emit_svg) {
      Series num{"numeric", {}, {}}, b1{"I", {}, {}}, b2{"II", {}, {}}, b3{"III", {}, {}};
      for (const auto& r : rows) {
        num.x.push_back(r.xi);
        num.y.push_back(r.entropy);
        b1.x.push_back(r.xi);
        b1.y.push_back(std::min(r.entropy_branch[0], 10.0));
        b2.x.push_back(r.xi);
        b2.y.push_back(r.entropy_branch[1]);
        b3.x.push_back(r.xi);
        b3.y.push_back(std::max(r.entropy_branch[2], 0.0));
      }
      write_file(output_path(cfg, stem + ".svg"),
                 svg_line_plot("Single-site entanglement, N=" + std::to_string(n), "xi", "entropy",
                               {num, b1, b2, b3}),
                 log);
    }
  }
  return kExitOk;
}

int cmd_fit_slope(const SweepConfig& cfg, std::ostream& out) {
  if (cfg.csv_path.empty()) throw ConfigError("fit-slope needs a CSV path");
  const FitResult r = fit_csv_columns(cfg.csv_path, cfg.x_col, cfg.y_col, cfg.x_log);
  CsvWriter w(out, {"slope", "intercept", "residual_rms", "points_used"});
  w.row({ftoa(r.slope), ftoa(r.intercept), ftoa(r.residual_rms), std::to_string(r.points_used)});
  return kExitOk;
}

int cmd_continuum_check(const SweepConfig& cfg, std::ostream& log) {
  validate(cfg);
  const auto rows = run_continuum_check(cfg);
  if (cfg.emit_csv) {
    std::ostringstream s;
    write_continuum_csv(s, rows);
    write_file(output_path(cfg, "continuum_check.csv"), s.str(), log);
  }
  return kExitOk;
}

}  // namespace hchain::cli
