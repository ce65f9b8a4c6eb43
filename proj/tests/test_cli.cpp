#include "hchain/analytics.hpp"
#include "hchain/cli/commands.hpp"
#include "hchain/cli/config.hpp"
#include "hchain/cli/csv.hpp"
#include "hchain/cli/fit.hpp"
#include "hchain/cli/svg.hpp"
#include "hchain/cli/worker_pool.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hchain;
using namespace hchain::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hchain_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Config, Grammar) {
  const ConfigFile f = parse_config(
      "# comment\n"
      "; another\n"
      "\n"
      "[grid]\n"
      "n = 512\n"
      "xi = 0.5, 1 # trailing\n"
      "[output]\n"
      "emit=csv,svg\n");
  EXPECT_EQ(f.values.at("grid.n"), "512");
  EXPECT_EQ(f.values.at("grid.xi"), "0.5, 1");
  EXPECT_EQ(f.values.at("output.emit"), "csv,svg");
  EXPECT_EQ(f.lines.at("grid.xi"), 6);
  EXPECT_THROW(parse_config("[grid\n"), ConfigError);
  EXPECT_THROW(parse_config("[grid]\nn 512\n"), ConfigError);
  EXPECT_THROW(parse_config("= 3\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/hchain.cfg"), ConfigError);
}

TEST(Config, Lists) {
  EXPECT_EQ(parse_real_list("1, 2.5"), (std::vector<double>{1, 2.5}));
  EXPECT_EQ(parse_real_list("0.5:2:0.5"), (std::vector<double>{0.5, 1, 1.5, 2}));
  EXPECT_EQ(parse_int_list("8*2:64"), (std::vector<long>{8, 16, 32, 64}));
  EXPECT_EQ(parse_int_list("4:10:3,100"), (std::vector<long>{4, 7, 10, 100}));
  EXPECT_THROW(parse_int_list("1.5"), ConfigError);
  EXPECT_THROW(parse_real_list("2:1:1"), ConfigError);
  EXPECT_THROW(parse_real_list("1:2:0"), ConfigError);
  EXPECT_THROW(parse_real_list("1*1:4"), ConfigError);
  EXPECT_THROW(parse_real_list("abc"), ConfigError);
}

TEST(Config, ApplyAndValidate) {
  SweepConfig cfg;
  apply_config(parse_config("[grid]\nn = 256\nxi = 1:3:1\nnb = 4,8\n[thresholds]\nzeta = 0.5\n"
                            "[output]\nemit = json\n"),
               cfg);
  EXPECT_EQ(cfg.n_values, (std::vector<long>{256}));
  EXPECT_EQ(cfg.xi_values, (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(cfg.nb_values, (std::vector<long>{4, 8}));
  EXPECT_EQ(cfg.zeta, 0.5);
  EXPECT_TRUE(cfg.emit_json);
  EXPECT_FALSE(cfg.emit_csv);
  EXPECT_NO_THROW(validate(cfg));
  EXPECT_EQ(coupling_grid(cfg, 256).size(), 3u);

  EXPECT_THROW(apply_config(parse_config("[grid]\nbogus = 1\n"), cfg), ConfigError);
  EXPECT_THROW(apply_emit("csv,pdf", cfg), ConfigError);

  SweepConfig bad;
  bad.xi_values = {-1.0};
  EXPECT_THROW(validate(bad), ConfigError);
  SweepConfig empty;
  empty.xi_values = {1.0};
  empty.n_values.clear();
  EXPECT_THROW(validate(empty), ConfigError);

  SweepConfig alpha;
  alpha.alpha_values = {0.5};
  const auto grid = coupling_grid(alpha, 64);
  ASSERT_EQ(grid.size(), 1u);
  EXPECT_NEAR(grid[0].alpha(), 0.5, 1e-15);
}

TEST(Csv, FormattingAndParsing) {
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(1.0), "1");
  EXPECT_EQ(std::stod(format_real(M_PI)), M_PI);
  std::ostringstream out;
  CsvWriter w(out, {"a", "b"});
  w.row({"1", format_real(0.5)});
  EXPECT_EQ(out.str(), "a,b\n1,0.5\n");
  EXPECT_THROW(w.row({"1"}), std::logic_error);
  const CsvTable t = parse_csv(out.str());
  EXPECT_EQ(t.column("b"), 1u);
  EXPECT_EQ(t.rows.at(0).at(1), "0.5");
  EXPECT_THROW(t.column("c"), std::out_of_range);
}

TEST(Fit, SyntheticLine) {
  std::vector<double> x, y;
  for (double nb : {8.0, 16.0, 32.0, 64.0}) {
    x.push_back(std::log(nb));
    y.push_back(std::log(nb) / 3 + 2);
  }
  const FitResult r = fit_line(x, y);
  EXPECT_NEAR(r.slope, 1.0 / 3, 1e-12);
  EXPECT_NEAR(r.intercept, 2.0, 1e-12);
  EXPECT_LT(r.residual_rms, 1e-12);
  EXPECT_EQ(r.points_used, 4);
  EXPECT_THROW(fit_line({1, 2}, {1, 2}), ConfigError);

  const fs::path dir = scratch_dir("fit");
  std::ofstream(dir / "sweep.csv") << "N_b,total\n8,2.6931471805599454\n16,2.9241962407465937\n"
                                      "32,3.1552453009332421\n64,3.3862943611198908\n";
  const FitResult f = fit_csv_columns((dir / "sweep.csv").string(), "N_b", "total", true);
  EXPECT_NEAR(f.slope, 1.0 / 3, 1e-9);
  SweepConfig cfg;
  cfg.csv_path = (dir / "sweep.csv").string();
  std::ostringstream out;
  EXPECT_EQ(cmd_fit_slope(cfg, out), 0);
  EXPECT_EQ(out.str().rfind("slope,intercept,residual_rms,points_used\n", 0), 0u);
}

TEST(Correlations, WeakRowAndHeader) {
  const auto rows = run_correlations(ChainSpec::from_xi(64, 1e-12), 3);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].l, 0);
  EXPECT_NEAR(rows[0].g_n, 0.5, 1e-12);
  EXPECT_NEAR(rows[0].h_n, 0.5, 1e-12);
  EXPECT_NEAR(rows[0].g_inf, 0.5, 1e-12);
  EXPECT_NEAR(rows[0].h_inf, 0.5, 1e-12);
  std::ostringstream out;
  write_correlations_csv(out, rows);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "l,g_N,h_N,g_inf,h_inf");
  EXPECT_THROW(run_correlations(ChainSpec::from_xi(64, 1.0), 64), ConfigError);
}

TEST(Correlations, GoldenFixture) {
  std::ostringstream out;
  write_correlations_csv(out, run_correlations(ChainSpec::from_xi(2048, 3.0), 64));
  EXPECT_EQ(out.str(), slurp(fs::path(HCHAIN_FIXTURE_DIR) / "correlations_n2048_xi3.csv"));
}

TEST(Commands, DeterministicOutput) {
  SweepConfig cfg;
  cfg.n_values = {2048};
  cfg.xi_values = {3.0};
  cfg.emit_svg = true;
  std::ostringstream log;
  cfg.out_dir = scratch_dir("det_a").string();
  ASSERT_EQ(cmd_correlations(cfg, log), 0);
  cfg.out_dir = scratch_dir("det_b").string();
  ASSERT_EQ(cmd_correlations(cfg, log), 0);
  for (const char* f : {"correlations.csv", "correlations.svg"}) {
    EXPECT_EQ(slurp(fs::temp_directory_path() / "hchain_test_det_a" / f),
              slurp(fs::temp_directory_path() / "hchain_test_det_b" / f));
  }
}

TEST(Commands, EntropySweepMonotone) {
  SweepConfig cfg;
  cfg.xi_values = {0.25, 0.5, 1, 2, 3, 4};
  cfg.nb_values = {4, 16};
  const auto rows = run_entropy_sweep(cfg, 512);
  ASSERT_EQ(rows.size(), 12u);
  for (long nb : cfg.nb_values) {
    double prev = -1;
    for (const SweepRow& r : rows) {
      if (r.n_b != nb) continue;
      EXPECT_GE(r.total, prev - 1e-12);
      EXPECT_GE(r.total + 1e-12, r.e_modes[0] + r.e_modes[1] + r.e_modes[2] + r.e_modes[3] - 1e-9);
      prev = r.total;
    }
  }
  SweepConfig weak;
  weak.alpha_values = {1e-12};
  weak.nb_values = {4};
  EXPECT_EQ(run_entropy_sweep(weak, 64).at(0).total, 0.0);
  std::ostringstream out;
  write_entropy_sweep_csv(out, rows);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "xi,N_b,total,E_mode1,E_mode2,E_mode3,E_mode4,regime");
}

TEST(Commands, ModesJson) {
  const EntanglementReport r = analyze(ChainSpec::from_xi(256, 2.0), {0, 12});
  const nlohmann::json j = modes_json(r, 5);
  for (const char* key : {"spec", "partition", "regime", "precision_bits", "modes", "total"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["partition"]["N_b"], 12);
  ASSERT_EQ(j["modes"].size(), 5u);
  for (std::size_t m = 0; m < 5; ++m) {
    const auto& mode = j["modes"][m];
    for (const char* key : {"lambda", "kappa", "parity", "entropy", "beta", "turning_point", "u_A", "v_A",
                            "u_B", "v_B", "participation_A"}) {
      EXPECT_TRUE(mode.contains(key)) << key;
    }
    EXPECT_EQ(mode["parity"].get<int>(), m % 2 == 0 ? 1 : -1);
    EXPECT_EQ(mode["u_A"].size(), 12u);
    EXPECT_EQ(mode["u_B"].size(), 244u);
  }
}

TEST(Commands, TurningPointsMoveOutward) {
  for (double xi : {1.0, 3.0, 6.0}) {
    const EntanglementReport r = analyze(ChainSpec::from_xi(256, xi), {0, 16});
    ASSERT_GE(r.modes.size(), 4u);
    EXPECT_GE(r.modes[0].turning_point, r.modes[3].turning_point) << xi;
  }
}

TEST(Commands, ScalingRows) {
  SweepConfig cfg;
  cfg.nb_values = {8, 12};
  const auto rows = run_scaling(cfg, ChainSpec::from_xi(256, 3.0));
  ASSERT_FALSE(rows.empty());
  for (const ScalingRow& r : rows) {
    EXPECT_GE(r.m, 2);
    EXPECT_LE(r.m, r.n_b);
    EXPECT_DOUBLE_EQ(r.mu_scaled, double(r.m) / r.n_b);
    EXPECT_EQ(r.f_predicted, quantize_residual(r.m, ResidualModel{cfg.zeta, r.n_b}).f);
    EXPECT_LT(r.ln_e_over_nb, 0.0);
  }
}

TEST(Commands, SingleSiteAndRegimeMap) {
  SweepConfig cfg;
  cfg.xi_values = {0.5, 4.0};
  const auto rows = run_single_site(cfg, 1000);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].regime, Regime::I);
  EXPECT_NEAR(rows[0].entropy, entropy_of_lambda(rows[0].lambda), 1e-9);
  cfg.nb_values = {2, 4};
  const auto map = run_regime_map(cfg, 64);
  EXPECT_EQ(map.size(), 4u);
  for (const auto& r : map) EXPECT_GE(r.total, r.e_mode1);
}

TEST(Commands, ContinuumCheck) {
  SweepConfig cfg;
  cfg.n_values = {256, 512};
  cfg.x_values = {0.3125, 0.625};
  const auto rows = run_continuum_check(cfg);
  EXPECT_EQ(rows.size(), 4u);
  for (const auto& r : rows) EXPECT_TRUE(r.aligned);
  cfg.x_values = {0.3};
  EXPECT_THROW(run_continuum_check(cfg), ConfigError);
}

TEST(Commands, ExitCodes) {
  std::ostringstream err;
  EXPECT_EQ(run_guarded([] { return 0; }, err), kExitOk);
  EXPECT_EQ(run_guarded([]() -> int { throw ConfigError("bad"); }, err), kExitConfig);
  EXPECT_EQ(run_guarded([]() -> int { throw DomainError("bad"); }, err), kExitConfig);
  EXPECT_EQ(run_guarded([]() -> int { throw NumericError("williamson", "bad"); }, err), kExitNumeric);
  EXPECT_NE(err.str().find("stage 'williamson'"), std::string::npos);
  EXPECT_EQ(run_guarded([]() -> int { throw ConvergenceError("slow"); }, err), kExitNumeric);

  SweepConfig cfg;
  cfg.n_values = {64};
  cfg.xi_values = {1.0};
  cfg.nb_values = {40};
  cfg.out_dir = scratch_dir("codes").string();
  std::ostringstream log;
  EXPECT_EQ(run_guarded([&] { return cmd_entropy_sweep(cfg, log); }, err), kExitConfig);
}

TEST(WorkerPool, OrderAndErrors) {
  const auto squares = parallel_map<int>(10, 3, [](std::size_t i) { return int(i * i); });
  for (int i = 0; i < 10; ++i) EXPECT_EQ(squares[i], i * i);
  EXPECT_THROW(parallel_map<int>(5, 2,
                                 [](std::size_t i) -> int {
                                   if (i == 3) throw std::runtime_error("x");
                                   return 0;
                                 }),
               std::runtime_error);
}

TEST(Svg, Output) {
  const std::string s = svg_line_plot("t", "x", "y", {{"a", {0, 1, 2}, {1, 0, 1}}});
  EXPECT_EQ(s.rfind("<svg", 0), 0u);
  EXPECT_NE(s.find("</svg>"), std::string::npos);
  const std::string l = svg_level_sets("t", "x", "y", {0, 1}, {0, 1}, {{0, 1}, {1, 2}}, {0.5, 1.5}, {});
  EXPECT_NE(l.find("<line"), std::string::npos);
}
