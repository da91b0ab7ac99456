#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "permcyc/conjugacy.hpp"
#include "permcyc/cycles.hpp"
#include "permcyc/equivalence.hpp"
#include "permcyc/normalform.hpp"
#include "permcyc/permutation.hpp"

using namespace permcyc;

namespace {

Nat ev(const PermExpr& p, Nat x) {
  Fuel fuel(kDefaultFuel);
  return p->apply(x, fuel);
}

}  // namespace

TEST_CASE("conjugator_same_partition examples") {
  PermExpr f = perm_piecewise({PiecewiseRule::point(0, 1), PiecewiseRule::point(1, 2), PiecewiseRule::point(2, 0)});
  PermExpr g = perm_piecewise({PiecewiseRule::point(0, 2), PiecewiseRule::point(2, 1), PiecewiseRule::point(1, 0)});
  CycleWitness w = witness_from_eq(f, eq_fibers(fun_table({{1, 0}, {2, 0}})));
  PermExpr h = conjugator_same_partition(f, g, w);
  for (Nat x = 0; x < 20; ++x) CHECK(ev(h, x) == ev(perm_transposition(1, 2), x));
  CHECK(verify_conjugation(f, g, h, 50));

  PermExpr id = perm_identity();
  PermExpr hid = conjugator_same_partition(id, id, intrinsic_witness(id));
  for (Nat x = 0; x < 100; ++x) CHECK(ev(hid, x) == x);

  auto gg = fixtures::g();
  PermExpr hg = conjugator_same_partition(gg.perm, gg.perm, gg.witness);
  CHECK(ev(hg, 0) == 0);
}

TEST_CASE("least cycle elements are fixed points of the conjugator") {
  oracle::Gen gen(51);
  for (int i = 0; i < 20; ++i) {
    auto f = fixtures::finitary(gen.transpositions(8, 30));
    PermExpr g = i % 2 ? perm_inverse(f.perm) : normalize(f.perm, f.witness);
    PermExpr h = conjugator_same_partition(f.perm, g, f.witness);
    Fuel fuel(kDefaultFuel);
    for (Nat x = 0; x < 40; ++x)
      if (least_representative(eq_cycles(f.perm, f.witness), x) == x) CHECK(ev(h, x) == x);
    CHECK(verify_conjugation(f.perm, g, h, 60));
    CHECK(verify_conjugation_serial(f.perm, g, h, 60));
  }
}

TEST_CASE("conjugator_from_isomorphism examples") {
  auto ev_c = fixtures::evens_cycle(), od = fixtures::odds_cycle();
  PermExpr c = conjugator_from_isomorphism(ev_c.perm, od.perm, perm_parity_swap(), ev_c.witness);
  CHECK(verify_conjugation(ev_c.perm, od.perm, c, 400));
  CHECK(isomorphism_from_conjugator(c, eq_cycles(ev_c.perm, ev_c.witness), eq_cycles(od.perm, od.witness)).verify(200));

  auto g = fixtures::g();
  PermExpr viaid = conjugator_from_isomorphism(g.perm, g.perm, perm_identity(), g.witness);
  PermExpr same = conjugator_same_partition(g.perm, g.perm, g.witness);
  for (Nat x = 0; x < 200; ++x) CHECK(ev(viaid, x) == ev(same, x));
  EqExpr pg = eq_cycles(g.perm, g.witness);
  CHECK(isomorphism_from_conjugator(same, pg, pg).verify(200));

  PermExpr a = perm_transposition(0, 1), b = perm_transposition(2, 3);
  PermExpr theta = perm_finitary({{0, 2}, {1, 3}});
  PermExpr ct = conjugator_from_isomorphism(a, b, theta, intrinsic_witness(a));
  CHECK(verify_conjugation(a, b, ct, 100));
  CHECK(isomorphism_from_conjugator(ct, eq_cycles(a, intrinsic_witness(a)), eq_cycles(b, intrinsic_witness(b)))
            .verify(100));
}

TEST_CASE("conjugate_perm examples") {
  PermExpr g = perm_g();
  for (Nat x = 0; x < 200; ++x) CHECK(ev(conjugate_perm(g, perm_identity()), x) == ev(g, x));
  PermExpr t = conjugate_perm(perm_transposition(0, 1), perm_transposition(1, 2));
  for (Nat x = 0; x < 20; ++x) CHECK(ev(t, x) == ev(perm_transposition(0, 2), x));
  PermExpr odd = conjugate_perm(fixtures::evens_cycle().perm, perm_parity_swap());
  for (Nat x = 0; x < 400; ++x) CHECK(ev(odd, x) == ev(fixtures::odds_cycle().perm, x));
}

TEST_CASE("conjugation failures are detected") {
  PermExpr f = perm_transposition(0, 1);
  CHECK_FALSE(verify_conjugation(f, perm_identity(), perm_identity(), 10));
  CHECK_FALSE(verify_conjugation_serial(f, perm_identity(), perm_identity(), 10));
  CHECK_FALSE(isomorphism_from_conjugator(perm_transposition(0, 1), eq_modulo(2), eq_modulo(2)).verify(10));
}
