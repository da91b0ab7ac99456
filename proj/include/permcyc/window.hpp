#pragma once

#include <functional>
#include <optional>

#include "permcyc/core.hpp"

namespace permcyc::window {

/// Smallest i < n with !pred(i), or nullopt when pred holds everywhere.
/// An exception thrown by pred counts as a failure at that index.
/// The parallel version splits [0, n) across OpenMP threads; pred must be
/// safe to call concurrently.
std::optional<Nat> first_failure(Nat n, const std::function<bool(Nat)>& pred);
std::optional<Nat> first_failure_serial(Nat n, const std::function<bool(Nat)>& pred);

inline bool all_of(Nat n, const std::function<bool(Nat)>& pred) {
  return !first_failure(n, pred).has_value();
}
inline bool all_of_serial(Nat n, const std::function<bool(Nat)>& pred) {
  return !first_failure_serial(n, pred).has_value();
}

/// Runs body(i) for every i < n, in parallel; the first exception (by
/// index) is rethrown after the loop.
void for_each(Nat n, const std::function<void(Nat)>& body);
void for_each_serial(Nat n, const std::function<void(Nat)>& body);

int thread_count();

}  // namespace permcyc::window
