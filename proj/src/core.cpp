#include "permcyc/core.hpp"

#include <cmath>
#include <limits>

namespace permcyc {

namespace {
using u128 = unsigned __int128;
constexpr Nat kNatMax = std::numeric_limits<Nat>::max();

// n(n+1)/2 in 128 bits.
u128 triangle(u128 n) { return n * (n + 1) / 2; }

}  // namespace

Nat checked_add(Nat a, Nat b) {
  Nat r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("natural addition overflows 64 bits");
  return r;
}

Nat checked_mul(Nat a, Nat b) {
  Nat r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("natural multiplication overflows 64 bits");
  return r;
}

Nat delta(Int k) {
  if (k == 0) return 0;
  if (k > 0) return static_cast<Nat>(k) * 2;
  // -2k - 1 = 2(-(k+1)) + 1, safe for INT64_MIN
  return static_cast<Nat>(-(k + 1)) * 2 + 1;
}

Int delta_inv(Nat j) {
  if (j % 2 == 0) return static_cast<Int>(j / 2);
  return -static_cast<Int>(j / 2) - 1;
}

Nat pair(Nat x, Nat y) {
  u128 s = u128(x) + y;
  if (s >> 34) throw OverflowError("pair code overflows 64 bits");
  u128 r = triangle(s) + x;
  if (r > kNatMax) throw OverflowError("pair code overflows 64 bits");
  return static_cast<Nat>(r);
}

std::pair<Nat, Nat> unpair(Nat z) {
  // largest s with s(s+1)/2 <= z
  auto approx = (std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L;
  u128 s = static_cast<u128>(approx);
  while (triangle(s) > z) --s;
  while (triangle(s + 1) <= z) ++s;
  Nat x = static_cast<Nat>(z - triangle(s));
  Nat y = static_cast<Nat>(s) - x;
  return {x, y};
}

Nat pack3(Nat x, Nat y, Nat z) { return pair(x, pair(y, z)); }

Triple unpack3(Nat w) {
  auto [x, r] = unpair(w);
  auto [y, z] = unpair(r);
  return {x, y, z};
}

bool Fuel::try_consume() {
  if (remaining_) {
    if (*remaining_ == 0) return false;
    --*remaining_;
  }
  ++used_;
  return true;
}

void Fuel::consume() {
  if (!try_consume()) throw FuelExhausted();
}

void Fuel::consume(Nat n) {
  if (remaining_ && *remaining_ < n) {
    used_ += *remaining_;
    remaining_ = 0;
    throw FuelExhausted();
  }
  if (remaining_) *remaining_ -= n;
  used_ += n;
}

SearchOutcome<Nat> mu_search(const std::function<bool(Nat)>& pred, Fuel& fuel) {
  Nat probes = 0;
  for (Nat n = 0;; ++n) {
    if (!fuel.try_consume()) return SearchOutcome<Nat>::Exhausted(probes);
    ++probes;
    if (pred(n)) return SearchOutcome<Nat>::Found(n, probes);
  }
}

SearchOutcome<Int> xi_search(const std::function<bool(Int)>& pred, Fuel& fuel) {
  Nat probes = 0;
  for (Nat i = 0;; ++i) {
    if (!fuel.try_consume()) return SearchOutcome<Int>::Exhausted(probes);
    ++probes;
    Int k = delta_inv(i);
    if (pred(k)) return SearchOutcome<Int>::Found(k, probes);
  }
}

}  // namespace permcyc
