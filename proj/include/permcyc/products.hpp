#pragma once

#include <functional>

#include "permcyc/expr.hpp"

namespace permcyc {

/// (x y) . f: apply f, then swap x and y.
PermExpr transposition_times_perm(Nat x, Nat y, PermExpr f);

struct ProductWitness {
  PermExpr perm;
  CycleWitness decider;
  CfDecider cf;
};

/// Which way the transposition reshapes the cycles of f.
enum class ProductCase { Trivial, Split, Fuse, Rays };
std::string to_string(ProductCase c);
ProductCase classify_product(Nat x, Nat y, const CycleWitness& w, const CfDecider& cf, Fuel& fuel);

/// Cycle decider of (x y) . f from a decider and a CF decider of f.
CycleWitness transposition_times(Nat x, Nat y, PermExpr f, const CycleWitness& w, CfDecider cf);
/// Same, together with the CF decider of the product.
ProductWitness transposition_times_cf(Nat x, Nat y, PermExpr f, const CycleWitness& w, CfDecider cf);

/// Witnesses for a . f . b with a, b given by eta codes.
ProductWitness finitary_product(Nat a_code, PermExpr f, Nat b_code, const CycleWitness& w, CfDecider cf);

using UniformProductDeciders = std::function<CycleWitness(Nat, Nat)>;

/// CF decider of f from deciders of every (x y) . f. y0 must lie in an
/// infinite cycle; nullopt states that f has none.
CfDecider cf_from_product_deciders(PermExpr f, const CycleWitness& w, UniformProductDeciders uniform,
                                   std::optional<Nat> y0);

}  // namespace permcyc
