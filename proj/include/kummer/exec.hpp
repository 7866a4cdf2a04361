#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace kummer {

// Selects between the OpenMP kernel and its serial reference. Both paths
// perform the same floating-point operations in the same per-output order,
// so results are bit-identical.
enum class Exec { serial, parallel };

// Calls body(i) for i in [0, n). In parallel mode exceptions cannot cross the
// OpenMP region, so each is parked and the one with the lowest index is
// rethrown afterwards; that matches what the serial loop would have thrown.
template <class Body>
void for_each_index(std::size_t n, Exec exec, Body&& body) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace kummer
