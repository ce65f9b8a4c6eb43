// Compiled with -mavx2 -mfma; only reached through the dispatcher after a
// runtime CPU check.

#include "hchain/kernels.hpp"

#include <immintrin.h>

#include <cstdint>

namespace hchain::kernels::detail {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void cosine_sums_avx2(std::span<const double> w1, std::span<const double> w2,
                      std::span<const double> cos_table, std::span<double> out1,
                      std::span<double> out2) {
  const auto n = static_cast<std::int64_t>(cos_table.size());
  const std::size_t m = w1.size();
  const std::size_t m4 = m & ~std::size_t{3};
  const double* table = cos_table.data();
  const __m256i vn = _mm256_set1_epi64x(n);
  const __m256i vn_minus_1 = _mm256_set1_epi64x(n - 1);

  for (std::size_t l = 0; l < out1.size(); ++l) {
    const std::int64_t step = static_cast<std::int64_t>(l) % n;
    const std::int64_t inc = (4 * step) % n;
    __m256i idx = _mm256_set_epi64x((3 * step) % n, (2 * step) % n, step, 0);
    const __m256i vinc = _mm256_set1_epi64x(inc);
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    for (std::size_t k = 0; k < m4; k += 4) {
      const __m256d c = _mm256_i64gather_pd(table, idx, 8);
      acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w1.data() + k), c, acc1);
      acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(w2.data() + k), c, acc2);
      idx = _mm256_add_epi64(idx, vinc);
      const __m256i wrap = _mm256_cmpgt_epi64(idx, vn_minus_1);
      idx = _mm256_sub_epi64(idx, _mm256_and_si256(wrap, vn));
    }
    double s1 = hsum(acc1);
    double s2 = hsum(acc2);
    for (std::size_t k = m4; k < m; ++k) {
      const double c = table[(step * static_cast<std::int64_t>(k)) % n];
      s1 += w1[k] * c;
      s2 += w2[k] * c;
    }
    out1[l] = s1;
    out2[l] = s2;
  }
}

double dot_avx2(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t n8 = n & ~std::size_t{7};
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n8; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i + 4), _mm256_loadu_pd(b.data() + i + 4),
                           acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (std::size_t i = n8; i < n; ++i) s += a[i] * b[i];
  return s;
}

void toeplitz_apply_avx2(std::span<const double> table, std::size_t base,
                         std::span<const double> x, std::span<double> y) {
  const std::size_t ny = y.size();
  const std::size_t ny4 = ny & ~std::size_t{3};
  const double* t = table.data();
  for (std::size_t j = 0; j < ny4; j += 4) {
    __m256d acc = _mm256_setzero_pd();
    const double* row = t + base + j;
    for (std::size_t i = 0; i < x.size(); ++i) {
      acc = _mm256_fmadd_pd(_mm256_set1_pd(x[i]), _mm256_loadu_pd(row - i), acc);
    }
    _mm256_storeu_pd(y.data() + j, acc);
  }
  for (std::size_t j = ny4; j < ny; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += t[base + j - i] * x[i];
    y[j] = s;
  }
}

void toeplitz_apply_transposed_avx2(std::span<const double> table, std::size_t base,
                                    std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = dot_avx2(table.subspan(base - i, x.size()), x);
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{cosine_sums_avx2, dot_avx2, toeplitz_apply_avx2,
                             toeplitz_apply_transposed_avx2};
  return t;
}

}  // namespace hchain::kernels::detail
