#include "fixtures.hpp"

#include "permcyc/cycles.hpp"
#include "permcyc/equivalence.hpp"
#include "permcyc/normalform.hpp"

namespace fixtures {

using namespace permcyc;

namespace {

CfDecider odd_finite() {
  return [](Nat x, Fuel&) { return x % 2 == 1; };
}
CfDecider even_finite() {
  return [](Nat x, Fuel&) { return x % 2 == 0; };
}

}  // namespace

Fixture g() {
  PermExpr p = perm_g();
  return {"g", p, witness_from_eq(p, eq_support_of(eq_modulo(2), 0)), odd_finite()};
}

Fixture evens_cycle() {
  PermExpr p = build_cycle_from_set(block_decider(eq_modulo(2), 0));
  return {"evens_cycle", p, intrinsic_witness(p), odd_finite(), true};
}

Fixture odds_cycle() {
  PermExpr p = build_cycle_from_set(block_decider(eq_modulo(2), 1));
  return {"odds_cycle", p, intrinsic_witness(p), even_finite(), true};
}

Fixture two_cycles() {
  PermExpr p = perm_from_rho(eq_modulo(2), rho_constant(RhoKind::GreaterElement, 1));
  return {"two_cycles", p, witness_from_eq(p, eq_modulo(2)), [](Nat, Fuel&) { return false; }, true};
}

Fixture mixed() {
  PermExpr p = perm_compose(evens_cycle().perm, perm_finitary({{1, 5}, {1, 3}}));
  auto small = [](Nat x) { return x == 1 || x == 3 || x == 5; };
  auto rel = [small](Nat x, Nat y, Fuel&) {
    return x == y || (x % 2 == 0 && y % 2 == 0) || (small(x) && small(y));
  };
  return {"mixed", p, CycleWitness::decider(p, rel), odd_finite()};
}

Fixture identity() {
  PermExpr p = perm_identity();
  return {"identity", p, intrinsic_witness(p), [](Nat, Fuel&) { return true; }, true};
}

Fixture delta_succ() {
  PermExpr p = perm_delta_succ();
  return {"delta_succ", p, intrinsic_witness(p), [](Nat, Fuel&) { return false; }, true};
}

Fixture finitary(const std::vector<Transp>& ts) {
  PermExpr p = perm_finitary(ts);
  return {"finitary", p, intrinsic_witness(p), [](Nat, Fuel&) { return true; }};
}

std::vector<Fixture> infinite_fixtures() {
  return {g(), evens_cycle(), odds_cycle(), two_cycles(), mixed(), delta_succ()};
}

}  // namespace fixtures
