#include "hchain/cli/fit.hpp"

#include "hchain/cli/config.hpp"
#include "hchain/cli/csv.hpp"

#include <cmath>
#include <stdexcept>

namespace hchain::cli {

FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit: x and y differ in length");
  if (x.size() < 3) throw ConfigError("fit needs at least 3 points, got " + std::to_string(x.size()));
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw ConfigError("fit: all x values are equal");
  FitResult r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (r.slope * x[i] + r.intercept);
    ss += e * e;
  }
  r.residual_rms = std::sqrt(ss / n);
  r.points_used = static_cast<long>(x.size());
  return r;
}

FitResult fit_csv_columns(const std::string& path, const std::string& x_col,
                          const std::string& y_col, bool x_log) {
  CsvTable t;
  std::size_t ix = 0, iy = 0;
  try {
    t = read_csv(path);
    ix = t.column(x_col);
    iy = t.column(y_col);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  std::vector<double> xs, ys;
  for (const auto& row : t.rows) {
    double x = 0, y = 0;
    try {
      x = std::stod(row[ix]);
      y = std::stod(row[iy]);
    } catch (const std::exception&) {
      throw ConfigError("non-numeric cell in fit columns");
    }
    if (x_log) {
      if (!(x > 0)) throw ConfigError("log of non-positive x");
      x = std::log(x);
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  return fit_line(xs, ys);
}

}  // namespace hchain::cli
