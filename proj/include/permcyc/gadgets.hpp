#pragma once

#include <functional>

#include "permcyc/equivalence.hpp"
#include "permcyc/expr.hpp"
#include "permcyc/machine.hpp"

namespace permcyc {

FamilyExpr halting_family(HaltingVariant v);
EqExpr halting_equivalence(HaltingVariant v);

/// <x, n> -> [some n' > n has the same CF label], i.e. false exactly when
/// program x halts at step n + 1.
RhoExpr rho_halting_step();

/// Permutation whose cycles are the CF-variant halting blocks; the cycle of
/// <x, 0> is finite iff program x halts on its own code.
PermExpr cf_hard_perm();

/// <x,y,i> rewiring that turns an n-cycle of g through x into a
/// (2n+1)-cycle through j(x) = <x,x,0>.
PermExpr odd_length_gadget(PermExpr g);
Nat odd_length_embed(Nat x);

/// <<x,y>, i> -> [(i+1) ~ i in the PiXY member for (x, y)].
RhoExpr rho_adjacent_related(PermExpr f);
/// Cycles are the coproduct of the PiXY family of f.
PermExpr interred_cf_perm(PermExpr f);

struct CdToCf {
  PermExpr g;
  std::function<Nat(Nat)> j;  // <x,y> -> <<x,y>, 0>
};
/// x ~_f y  iff  the g-cycle of j(<x,y>) is finite.
CdToCf reduce_cd_to_cf(PermExpr f);

struct CfToCd {
  PermExpr f;       // gprime . gprime
  PermExpr gprime;  // odd_length_gadget(g)
  std::function<Nat(Nat)> j;
  std::function<Nat(Nat)> jprime;  // gprime . j
};
/// [x]_g finite  iff  j(x) ~_f jprime(x).
CfToCd reduce_cf_to_cd(PermExpr g);

struct ConjReduction {
  PermExpr fprime;
  CycleWitness pi;
};
/// Blocks: the points f^k(x) with k even (k the first exponent in xi order)
/// form one block; every other point is a singleton. fprime is the normal
/// permutation of these blocks.
ConjReduction conj_reduction_perm(PermExpr f, const CycleWitness& w, Nat x);
EqExpr conj_reduction_blocks(PermExpr f, const CycleWitness& w, Nat x);

}  // namespace permcyc
