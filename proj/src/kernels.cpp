#include "hchain/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace hchain::kernels {
namespace {

Isa detect() {
  if (const char* env = std::getenv("HCHAIN_SIMD"); env != nullptr && std::strcmp(env, "scalar") == 0) {
    return Isa::scalar;
  }
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

const detail::KernelTable& table() {
#if defined(HCHAIN_HAVE_AVX2_TU)
  if (current().load(std::memory_order_relaxed) == Isa::avx2) return detail::avx2_table();
#endif
  return detail::scalar_table();
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::scalar) return true;
#if defined(HCHAIN_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return current().load(); }

void force_isa(Isa isa) {
  if (!isa_available(isa)) throw std::runtime_error("requested ISA is not available on this CPU");
  current().store(isa);
}

void cosine_sums(std::span<const double> w1, std::span<const double> w2,
                 std::span<const double> cos_table, std::span<double> out1, std::span<double> out2) {
  if (w1.size() != w2.size() || out1.size() != out2.size() || cos_table.empty()) {
    throw std::invalid_argument("cosine_sums: size mismatch");
  }
  table().cosine_sums(w1, w2, cos_table, out1, out2);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  return table().dot(a, b);
}

void toeplitz_apply(std::span<const double> t, std::size_t base, std::span<const double> x,
                    std::span<double> y) {
  if (x.empty() || y.empty()) return;
  if (base + 1 < x.size() || base + y.size() > t.size()) {
    throw std::out_of_range("toeplitz_apply: window outside table");
  }
  table().toeplitz_apply(t, base, x, y);
}

void toeplitz_apply_transposed(std::span<const double> t, std::size_t base,
                               std::span<const double> x, std::span<double> y) {
  if (x.empty() || y.empty()) return;
  if (base + 1 < y.size() || base + x.size() > t.size()) {
    throw std::out_of_range("toeplitz_apply_transposed: window outside table");
  }
  table().toeplitz_apply_transposed(t, base, x, y);
}

}  // namespace hchain::kernels
