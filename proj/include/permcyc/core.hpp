#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace permcyc {

using Nat = std::uint64_t;
using Int = std::int64_t;

/// Thrown when a result would not fit in 64 bits.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Thrown when a search inside an evaluation runs out of fuel.
class FuelExhausted : public std::runtime_error {
 public:
  explicit FuelExhausted(const std::string& what = "fuel exhausted")
      : std::runtime_error(what) {}
};

/// Thrown when a caller obligation is detectably violated.
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

Nat checked_add(Nat a, Nat b);
Nat checked_mul(Nat a, Nat b);

/// Bijection Z -> N: 0, -1, 1, -2, 2, ... map to 0, 1, 2, 3, 4, ...
/// Total on the full int64/uint64 range.
Nat delta(Int k);
Int delta_inv(Nat j);

/// Standard quadratic pairing ((x+y)^2 + 3x + y) / 2. Throws OverflowError.
Nat pair(Nat x, Nat y);
std::pair<Nat, Nat> unpair(Nat z);

struct Triple {
  Nat x, y, z;
  bool operator==(const Triple&) const = default;
};
Nat pack3(Nat x, Nat y, Nat z);
Triple unpack3(Nat w);

/// Probe budget. Each predicate evaluation in a search costs one unit.
class Fuel {
 public:
  explicit Fuel(Nat budget) : remaining_(budget) {}
  static Fuel unbounded() { return Fuel(); }

  bool is_unbounded() const { return !remaining_.has_value(); }
  std::optional<Nat> remaining() const { return remaining_; }
  Nat used() const { return used_; }

  /// Takes one unit; false (and no change) if the budget is spent.
  bool try_consume();
  /// Takes one unit or throws FuelExhausted.
  void consume();
  /// Same as n calls to consume().
  void consume(Nat n);

 private:
  Fuel() = default;
  std::optional<Nat> remaining_;
  Nat used_ = 0;
};

inline constexpr Nat kDefaultFuel = 1'000'000;

template <class T>
struct SearchOutcome {
  std::optional<T> value;
  Nat probes = 0;

  bool found() const { return value.has_value(); }
  static SearchOutcome Found(T v, Nat probes) { return {v, probes}; }
  static SearchOutcome Exhausted(Nat probes) { return {std::nullopt, probes}; }
  bool operator==(const SearchOutcome&) const = default;
};

/// Least n >= 0 with pred(n), probing 0, 1, 2, ...
SearchOutcome<Nat> mu_search(const std::function<bool(Nat)>& pred, Fuel& fuel);

/// First k in the order 0, -1, 1, -2, 2, ... with pred(k).
SearchOutcome<Int> xi_search(const std::function<bool(Int)>& pred, Fuel& fuel);

/// Unwraps a search result, throwing FuelExhausted when nothing was found.
template <class T>
T require(const SearchOutcome<T>& r, const char* what = "fuel exhausted") {
  if (!r.value) throw FuelExhausted(what);
  return *r.value;
}

}  // namespace permcyc
