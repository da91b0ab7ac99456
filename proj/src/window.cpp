#include "permcyc/window.hpp"

#include <exception>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace permcyc::window {

namespace {
bool holds(const std::function<bool(Nat)>& pred, Nat i) {
  try {
    return pred(i);
  } catch (...) {
    return false;
  }
}
}  // namespace

std::optional<Nat> first_failure_serial(Nat n, const std::function<bool(Nat)>& pred) {
  for (Nat i = 0; i < n; ++i)
    if (!holds(pred, i)) return i;
  return std::nullopt;
}

std::optional<Nat> first_failure(Nat n, const std::function<bool(Nat)>& pred) {
  Nat first = std::numeric_limits<Nat>::max();
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16) reduction(min : first)
  for (long long i = 0; i < count; ++i) {
    auto idx = static_cast<Nat>(i);
    if (idx < first && !holds(pred, idx)) first = idx;
  }
  if (first == std::numeric_limits<Nat>::max()) return std::nullopt;
  return first;
}

void for_each_serial(Nat n, const std::function<void(Nat)>& body) {
  for (Nat i = 0; i < n; ++i) body(i);
}

void for_each(Nat n, const std::function<void(Nat)>& body) {
  const auto count = static_cast<long long>(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<Nat>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace permcyc::window
