#pragma once

#include <mpfr.h>

#include "kummer/error.hpp"

namespace kummer {

struct PrecisionPolicy {
  mpfr_prec_t initial = 128;
  mpfr_prec_t max = 4096;
};

// Runs f(prec) at prec = initial, 2*initial, ... up to max, retrying only on
// PrecisionExhausted (which covers CannotDivide and Undetermined). The last
// failure is rethrown once the cap is reached.
template <class F>
auto with_escalation(const PrecisionPolicy& policy, F&& f) -> decltype(f(policy.initial)) {
  for (mpfr_prec_t prec = policy.initial;; prec *= 2) {
    try {
      return f(prec);
    } catch (const PrecisionExhausted&) {
      if (prec * 2 > policy.max) throw;
    }
  }
}

}  // namespace kummer
