#include "hchain/precision.hpp"

namespace hchain {

namespace {
std::recursive_mutex& precision_mutex() {
  static std::recursive_mutex m;
  return m;
}

unsigned digits10_for_bits(unsigned bits) {
  // Rounded up so the backend never gets fewer bits than requested.
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398119521)) + 1;
}
}  // namespace

unsigned mp_precision_bits() {
  Mp probe(1);
  return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

PrecisionGuard::PrecisionGuard(unsigned bits)
    : lock_(precision_mutex()), saved_digits10_(Mp::default_precision()) {
  Mp::default_precision(digits10_for_bits(bits));
}

PrecisionGuard::~PrecisionGuard() { Mp::default_precision(saved_digits10_); }

}  // namespace hchain
