#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "permcyc/cycles.hpp"
#include "permcyc/equivalence.hpp"
#include "permcyc/gadgets.hpp"
#include "permcyc/permutation.hpp"

using namespace permcyc;

namespace {

const Nat kP0 = 1;      // [HALT]
const Nat kLoop = 15;   // [DECJZ r1 0]

}  // namespace

TEST_CASE("halting equivalence examples") {
  Fuel fuel(kDefaultFuel);
  EqExpr cf = halting_equivalence(HaltingVariant::CF);
  for (Nat n = 0; n < 30; ++n) CHECK(cf->related(pair(kLoop, 0), pair(kLoop, n), fuel));
  for (Nat n = 1; n < 30; ++n) CHECK_FALSE(cf->related(pair(kP0, 0), pair(kP0, n), fuel));
  EqExpr np = halting_equivalence(HaltingVariant::NonPermutable);
  CHECK_FALSE(np->related(pair(kP0, 0), pair(kP0, 1), fuel));
  EqExpr member = halting_family(HaltingVariant::CF)->member(kP0);
  CHECK(member->related(1, 7, fuel));
  CHECK_FALSE(member->related(0, 1, fuel));
}

TEST_CASE("cf_hard_perm examples") {
  PermExpr hard = cf_hard_perm();
  CHECK(oracle::orbit_closure(hard, pair(kP0, 0), 10).closed);
  CHECK_FALSE(oracle::orbit_closure(hard, pair(kLoop, 0), 300).closed);
  CycleWitness w = intrinsic_witness(hard);
  Fuel fuel(kDefaultFuel);
  CHECK(w.related(pair(kLoop, 3), pair(kLoop, 7), fuel));
  CHECK(window_bijection_check(hard, 3000));
}

TEST_CASE("the halting rho flags exactly the last pre-halting step") {
  RhoExpr rho = rho_halting_step();
  Fuel fuel(kDefaultFuel);
  for (const auto& p : oracle::labeled_programs()) {
    if (p.fate != oracle::Fate::Halts || p.steps > 50) continue;
    for (Nat n = 0; n < 60; ++n) CHECK(rho->eval(pair(p.code, n), fuel) == (n + 1 == p.steps ? 0u : 1u));
  }
}

TEST_CASE("odd-length gadget examples") {
  PermExpr t = odd_length_gadget(perm_transposition(0, 1));
  auto c5 = oracle::orbit_closure(t, odd_length_embed(0), 20);
  CHECK(c5.closed);
  CHECK(c5.members.size() == 5);
  auto c3 = oracle::orbit_closure(odd_length_gadget(perm_identity()), odd_length_embed(5), 20);
  CHECK(c3.closed);
  CHECK(c3.members == std::vector<Nat>{pack3(5, 5, 0), pack3(5, 5, 1), pack3(5, 5, 2)});
  PermExpr ev = odd_length_gadget(fixtures::evens_cycle().perm);
  CHECK_FALSE(oracle::orbit_closure(ev, odd_length_embed(0), 1000).closed);
  CHECK(window_bijection_check(t, 2000));
  // Triples whose last coordinate exceeds 2 are fixed.
  Fuel fuel(kDefaultFuel);
  CHECK(t->apply(pack3(0, 1, 5), fuel) == pack3(0, 1, 5));
}

TEST_CASE("CD to CF examples") {
  auto finite = [](const PermExpr& f, Nat x, Nat y) {
    CdToCf r = reduce_cd_to_cf(f);
    return oracle::orbit_closure(r.g, r.j(pair(x, y)), 200).closed;
  };
  CHECK(finite(perm_identity(), 3, 3));
  CHECK_FALSE(finite(perm_identity(), 0, 1));
  CHECK(finite(perm_transposition(0, 1), 0, 1));
  auto g = fixtures::g();
  CHECK(finite(g.perm, 0, 14));
  CHECK_FALSE(finite(g.perm, 0, 1));
  CdToCf r = reduce_cd_to_cf(perm_identity());
  CHECK(r.j(5) == pair(5, 0));
  CHECK(window_bijection_check(r.g, 1000));
}

TEST_CASE("CF to CD examples") {
  auto related = [](const PermExpr& g, Nat x) {
    CfToCd r = reduce_cf_to_cd(g);
    return oracle::same_cycle(r.f, r.j(x), r.jprime(x), 200);
  };
  CHECK(related(perm_transposition(0, 1), 0));
  CHECK(related(perm_identity(), 4));
  CfToCd r = reduce_cf_to_cd(fixtures::evens_cycle().perm);
  Fuel fuel(2000);
  CHECK_FALSE(reachability_semidecider(r.f, r.j(0), r.jprime(0), fuel).found());
  // In g' the two points are one step apart on an infinite cycle, so no even
  // power of g' joins them.
  CHECK(oracle::exponent(r.gprime, r.j(0), r.jprime(0), 10) == Int{1});
}

TEST_CASE("conjugacy reduction examples") {
  Fuel fuel(kDefaultFuel);
  auto id = conj_reduction_perm(perm_identity(), intrinsic_witness(perm_identity()), 0);
  for (Nat x = 0; x < 200; ++x) CHECK(id.fprime->apply(x, fuel) == x);

  auto g = fixtures::g();
  auto red = conj_reduction_perm(g.perm, g.witness, 0);
  CHECK(red.pi.related(0, 8, fuel));
  CHECK_FALSE(red.pi.related(0, 4, fuel));
  EqExpr blocks = conj_reduction_blocks(g.perm, g.witness, 0);
  CHECK(blocks->members_upto(16, fuel) == std::vector<Nat>{0, 6, 8, 14, 16});
  CHECK_FALSE(oracle::orbit_closure(red.fprime, 0, 50).closed);

  PermExpr t = perm_transposition(0, 1);
  auto tr = conj_reduction_perm(t, intrinsic_witness(t), 0);
  for (Nat x = 0; x < 200; ++x) CHECK(tr.fprime->apply(x, fuel) == x);
  CHECK_FALSE(tr.pi.related(0, 1, fuel));
}
