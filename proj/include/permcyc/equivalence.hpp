#pragma once

#include <map>
#include <optional>
#include <vector>

#include "permcyc/expr.hpp"

namespace permcyc {

/// The two halting labelings: r'_x(n) = [halts after <= n steps] (CF) and
/// r_x(0) = true, r_x(n) = r'_x(n-1) (NonPermutable).
enum class HaltingVariant { NonPermutable, CF };

std::string to_string(HaltingVariant v);
HaltingVariant halting_variant_from_string(const std::string& s);
bool halting_label(HaltingVariant v, Nat program, Nat n);

// Function constructors.
FunExpr fun_const(Nat c);
FunExpr fun_identity();
FunExpr fun_mod(Nat m);
FunExpr fun_table(std::map<Nat, Nat> table);
/// <x, n> -> <x, r_x(n)>; its fibers are the blocks of the halting coproduct.
FunExpr fun_halting_label(HaltingVariant v);
/// outer . inner
FunExpr fun_compose(FunExpr outer, FunExpr inner);
FunExpr fun_pair_left();
FunExpr fun_pair_right();

// Equivalence constructors.
EqExpr eq_singletons();
EqExpr eq_full();
EqExpr eq_modulo(Nat m);
EqExpr eq_fibers(FunExpr f);
/// Cycle equivalence of p, decided by w (any kind; converted to a decider).
EqExpr eq_cycles(PermExpr p, const CycleWitness& w);
EqExpr eq_halting_blocks(HaltingVariant v);
/// i ~ j  iff  i = j or f^k(x) != y for every |k| <= max(i, j).
EqExpr eq_pixy(PermExpr f, Nat x, Nat y);

/// The block of `origin` in eq, with every other point a singleton.
EqExpr eq_support_of(EqExpr eq, Nat origin);
/// Block structure of n -> r_x(n) for one program x.
EqExpr halting_member_eq(Nat program, HaltingVariant v);

/// <z,x> ~ <z',x'>  iff  z = z' and x ~_z x'.
EqExpr coproduct(FamilyExpr family);

/// x ~ x'  iff  h^-1(x) ~ h^-1(x') in the base.
EqExpr eq_image(EqExpr base, PermExpr h);

// Family constructors.
FamilyExpr family_constant(EqExpr eq);
FamilyExpr family_halting(HaltingVariant v);
/// <x, y> -> eq_pixy(f, x, y)
FamilyExpr family_pixy(PermExpr f);

bool eq_decide(const EqExpr& eq, Nat x, Nat y, Fuel& fuel);

/// Membership test for the block of `origin`.
struct BlockDecider {
  EqExpr eq;
  Nat origin = 0;
  bool contains(Nat y, Fuel& fuel) const { return eq->related(origin, y, fuel); }
};

BlockDecider block_decider(const EqExpr& eq, Nat x);

/// Least representative of the i-th block, blocks ordered by least element.
/// Exhausted when i is at least the number of blocks and fuel runs out.
SearchOutcome<Nat> nth_block_representative(const EqExpr& eq, Nat i, Fuel& fuel);
std::optional<BlockDecider> nth_block_decider(const EqExpr& eq, Nat i, Fuel& fuel);

/// Index of x's block in the nth_block_decider order.
Nat block_index(const EqExpr& eq, Nat x, Fuel& fuel);

Nat least_representative(const EqExpr& eq, Nat x);

/// First `count` members of block i in increasing order; nullopt when fuel
/// runs out first.
std::optional<std::vector<Nat>> enumerate_block(const EqExpr& eq, Nat i, Nat count, Fuel& fuel);

/// x ~_a y  iff  theta(x) ~_b theta(y), for all x, y < window.
bool is_isomorphism_on_window(const PermExpr& theta, const EqExpr& a, const EqExpr& b, Nat window);
bool is_isomorphism_on_window_serial(const PermExpr& theta, const EqExpr& a, const EqExpr& b,
                                     Nat window);

}  // namespace permcyc
