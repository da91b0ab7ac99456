#pragma once

#include "permcyc/expr.hpp"

namespace permcyc {

/// h with f = h^-1 . g . h, for f and g with the same cycles (decided by w).
/// h(x) = g^k(y) where y is the least element of [x] and f^k(y) = x.
PermExpr conjugator_same_partition(PermExpr f, PermExpr g, const CycleWitness& w);

/// theta . h with h conjugating f to theta^-1 . g . theta.
PermExpr conjugator_from_isomorphism(PermExpr f, PermExpr g, PermExpr theta, const CycleWitness& w);

/// A conjugator read as a map between the two cycle equivalences.
struct Isomorphism {
  PermExpr theta;
  EqExpr from;
  EqExpr to;
  bool verify(Nat window) const;
};
Isomorphism isomorphism_from_conjugator(PermExpr h, EqExpr part_f, EqExpr part_g);

/// h . f . h^-1
PermExpr conjugate_perm(PermExpr f, PermExpr h);

/// f(x) = h^-1(g(h(x))) for every x < window.
bool verify_conjugation(const PermExpr& f, const PermExpr& g, const PermExpr& h, Nat window);
bool verify_conjugation_serial(const PermExpr& f, const PermExpr& g, const PermExpr& h, Nat window);

}  // namespace permcyc
