#include "hchain/kernels.hpp"

namespace hchain::kernels::detail {
namespace {

void cosine_sums_scalar(std::span<const double> w1, std::span<const double> w2,
                        std::span<const double> cos_table, std::span<double> out1,
                        std::span<double> out2) {
  const std::size_t n = cos_table.size();
  const std::size_t m = w1.size();
  for (std::size_t l = 0; l < out1.size(); ++l) {
    const std::size_t step = l % n;
    std::size_t idx = 0;
    double s1 = 0.0;
    double s2 = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double c = cos_table[idx];
      s1 += w1[k] * c;
      s2 += w2[k] * c;
      idx += step;
      if (idx >= n) idx -= n;
    }
    out1[l] = s1;
    out2[l] = s2;
  }
}

double dot_scalar(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void toeplitz_apply_scalar(std::span<const double> table, std::size_t base,
                           std::span<const double> x, std::span<double> y) {
  for (std::size_t j = 0; j < y.size(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += table[base + j - i] * x[i];
    y[j] = s;
  }
}

void toeplitz_apply_transposed_scalar(std::span<const double> table, std::size_t base,
                                      std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += table[base + j - i] * x[j];
    y[i] = s;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{cosine_sums_scalar, dot_scalar, toeplitz_apply_scalar,
                             toeplitz_apply_transposed_scalar};
  return t;
}

}  // namespace hchain::kernels::detail
