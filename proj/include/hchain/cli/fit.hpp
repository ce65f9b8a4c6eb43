#pragma once

#include <string>
#include <vector>

namespace hchain::cli {

struct FitResult {
  double slope = 0;
  double intercept = 0;
  double residual_rms = 0;
  long points_used = 0;
};

/// Ordinary least squares y = slope x + intercept; needs at least 3 points.
FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Fit over two columns of a CSV file; x is replaced by ln x when x_log.
FitResult fit_csv_columns(const std::string& path, const std::string& x_col,
                          const std::string& y_col, bool x_log);

}  // namespace hchain::cli
