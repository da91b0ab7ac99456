#pragma once

#include <utility>
#include <vector>

#include "permcyc/expr.hpp"

namespace permcyc {

using Transp = std::pair<Nat, Nat>;

PermExpr perm_identity();
PermExpr perm_transposition(Nat x, Nat y);

/// t1 . t2 . ... . tn, so tn is applied first.
PermExpr perm_finitary(std::vector<Transp> ts);

/// delta . succ . delta^-1, the single cycle ..., 5, 3, 1, 0, 2, 4, 6, ...
PermExpr perm_delta_succ();

/// One case of a piecewise map. modulus 0 matches x == residue only.
/// Affine rules map x to a*x + b (a >= 1); constant rules need modulus 0.
struct PiecewiseRule {
  Nat modulus = 0;
  Nat residue = 0;
  bool constant = false;
  Nat a = 1;
  Int b = 0;
  Nat value = 0;  // constant rules

  bool matches(Nat x) const { return modulus == 0 ? x == residue : x % modulus == residue; }
  static PiecewiseRule affine(Nat modulus, Nat residue, Nat a, Int b);
  static PiecewiseRule point(Nat x, Nat value);
};

inline constexpr Nat kPiecewiseCheckWindow = 10'000;

/// First matching rule wins; unmatched points are fixed. Throws
/// PreconditionViolation unless the rules give a bijection on
/// [0, check_window).
PermExpr perm_piecewise(std::vector<PiecewiseRule> rules, Nat check_window = kPiecewiseCheckWindow);

/// outer . inner
PermExpr perm_compose(PermExpr outer, PermExpr inner);
PermExpr perm_inverse(PermExpr p);

/// The cycle {evens} listed as ..., 6, 2, 0, 4, 8, ... with every odd number fixed.
PermExpr perm_g();
/// x -> x + 1 for even x, x - 1 for odd x.
PermExpr perm_parity_swap();

/// z = <n, z'>; n = 0 is the identity (z' ignored), n = 1 has z' = x1,
/// otherwise z' = <x1, <x2, ... x_n>>. Each x_i = <a, b> is the transposition (a b).
Nat eta_encode(const std::vector<Transp>& ts);
std::vector<Transp> eta_decode_list(Nat z);
PermExpr eta_decode(Nat z);

/// Transposition list of a FinitaryProduct, Transposition or Identity node.
std::optional<std::vector<Transp>> finitary_transpositions(const PermExpr& p);

Nat perm_eval(const PermExpr& p, Nat x, Fuel& fuel);
Nat perm_eval_inv(const PermExpr& p, Nat x, Fuel& fuel);

struct OrbitEntry {
  Int k;
  Nat value;
  bool operator==(const OrbitEntry&) const = default;
};

/// f^k(x) for the first `steps` k in the order 0, -1, 1, -2, 2, ...
std::vector<OrbitEntry> orbit_window(const PermExpr& p, Nat x, Nat steps, Fuel& fuel);

/// perm_eval_inv inverts perm_eval at every x < window.
bool window_bijection_check(const PermExpr& p, Nat window);
bool window_bijection_check_serial(const PermExpr& p, Nat window);

}  // namespace permcyc
