#pragma once

#include <gmpxx.h>

namespace pautom {

// Exact arithmetic for quantities that grow like 2^(2^n).
using BigCount = mpz_class;
using BigRational = mpq_class;

inline BigCount pow2(unsigned long e) {
  BigCount r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

}  // namespace pautom
