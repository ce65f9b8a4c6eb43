#pragma once

// Data-parallel inner loops of the double-precision path.
//
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The variant is picked once at first use from the CPU feature
// bits; HCHAIN_SIMD=scalar in the environment forces the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace hchain::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();
/// Overrides the dispatch choice (tests use this to compare variants).
void force_isa(Isa isa);

/// For l in [0, out1.size()):
///   out1[l] = sum_k w1[k] * cos_table[(l*k) mod n]
///   out2[l] = sum_k w2[k] * cos_table[(l*k) mod n]
/// where n = cos_table.size() and k runs over [0, w1.size()).
void cosine_sums(std::span<const double> w1, std::span<const double> w2,
                 std::span<const double> cos_table, std::span<double> out1,
                 std::span<double> out2);

double dot(std::span<const double> a, std::span<const double> b);

/// y[j] = sum_i table[base + j - i] * x[i]  (Toeplitz block of a circulant).
/// Requires base >= x.size() - 1 and base + y.size() - 1 < table.size().
void toeplitz_apply(std::span<const double> table, std::size_t base,
                    std::span<const double> x, std::span<double> y);

/// y[i] = sum_j table[base + j - i] * x[j]  (transpose of toeplitz_apply).
void toeplitz_apply_transposed(std::span<const double> table, std::size_t base,
                               std::span<const double> x, std::span<double> y);

namespace detail {

struct KernelTable {
  void (*cosine_sums)(std::span<const double>, std::span<const double>, std::span<const double>,
                      std::span<double>, std::span<double>);
  double (*dot)(std::span<const double>, std::span<const double>);
  void (*toeplitz_apply)(std::span<const double>, std::size_t, std::span<const double>,
                         std::span<double>);
  void (*toeplitz_apply_transposed)(std::span<const double>, std::size_t,
                                    std::span<const double>, std::span<double>);
};

const KernelTable& scalar_table();
#if defined(HCHAIN_HAVE_AVX2_TU)
const KernelTable& avx2_table();
#endif

}  // namespace detail
}  // namespace hchain::kernels
