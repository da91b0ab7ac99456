#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "permcyc/permutation.hpp"
#include "permcyc/products.hpp"

using namespace permcyc;

TEST_CASE("case examples") {
  Fuel fuel(kDefaultFuel);
  auto g = fixtures::g();
  CHECK(classify_product(0, 4, g.witness, g.cf, fuel) == ProductCase::Split);
  CycleWitness a = transposition_times(0, 4, g.perm, g.witness, g.cf);
  CHECK(a.subject()->apply(0, fuel) == 0);
  CHECK_FALSE(a.related(0, 2, fuel));
  CHECK(a.related(2, 4, fuel));

  auto mixed = fixtures::mixed();
  CHECK(classify_product(0, 1, mixed.witness, mixed.cf, fuel) == ProductCase::Fuse);
  CycleWitness b = transposition_times(0, 1, mixed.perm, mixed.witness, mixed.cf);
  CHECK(b.related(3, 8, fuel));

  auto two = fixtures::two_cycles();
  CHECK(classify_product(0, 1, two.witness, two.cf, fuel) == ProductCase::Rays);
  CycleWitness c = transposition_times(0, 1, two.perm, two.witness, two.cf);
  CHECK_FALSE(c.related(0, 2, fuel));
  CHECK(c.related(0, 3, fuel));
  CHECK(classify_product(5, 5, two.witness, two.cf, fuel) == ProductCase::Trivial);
}

TEST_CASE("CF of a single product") {
  Fuel fuel(kDefaultFuel);
  auto g = fixtures::g();
  auto a = transposition_times_cf(0, 4, g.perm, g.witness, g.cf);
  CHECK(a.cf(0, fuel));
  CHECK_FALSE(a.cf(2, fuel));
  CHECK_FALSE(a.cf(4, fuel));
  CHECK(a.cf(3, fuel));

  auto mixed = fixtures::mixed();
  auto b = transposition_times_cf(0, 1, mixed.perm, mixed.witness, mixed.cf);
  CHECK_FALSE(b.cf(3, fuel));
  CHECK_FALSE(b.cf(0, fuel));
  CHECK(b.cf(7, fuel));

  auto fin = fixtures::finitary({{0, 1}, {2, 5}});
  auto c = transposition_times_cf(1, 5, fin.perm, fin.witness, fin.cf);
  for (Nat x = 0; x < 30; ++x) CHECK(c.cf(x, fuel));
}

TEST_CASE("finitary_product examples") {
  Fuel fuel(kDefaultFuel);
  auto g = fixtures::g();
  auto p = finitary_product(eta_encode({{0, 4}}), g.perm, eta_encode({}), g.witness, g.cf);
  CHECK(p.perm->apply(0, fuel) == 0);
  CHECK_FALSE(p.decider.related(0, 2, fuel));
  CHECK(p.cf(0, fuel));

  auto same = finitary_product(eta_encode({}), g.perm, eta_encode({}), g.witness, g.cf);
  for (Nat x = 0; x < 60; ++x) {
    CHECK(same.cf(x, fuel) == g.cf(x, fuel));
    for (Nat y = 0; y < 60; ++y) CHECK(same.decider.related(x, y, fuel) == g.witness.related(x, y, fuel));
  }

  auto id = fixtures::identity();
  Nat ab = eta_encode({{0, 1}, {2, 3}});
  auto q = finitary_product(ab, id.perm, ab, id.witness, id.cf);
  for (Nat x = 0; x < 20; ++x)
    for (Nat y = 0; y < 20; ++y) CHECK(q.decider.related(x, y, fuel) == (x == y));
}

TEST_CASE("CF from uniform product deciders") {
  auto mixed = fixtures::mixed();
  auto uniform = [mixed](Nat x, Nat y) { return transposition_times(x, y, mixed.perm, mixed.witness, mixed.cf); };
  CfDecider cf = cf_from_product_deciders(mixed.perm, mixed.witness, uniform, Nat{0});
  Fuel fuel(kDefaultFuel);
  CHECK(cf(3, fuel));
  CHECK_FALSE(cf(4, fuel));
  CHECK_FALSE(cf(0, fuel));
}

TEST_CASE("products agree with brute force on small random cases") {
  oracle::Gen gen(61);
  std::vector<fixtures::Fixture> bases = {fixtures::g(), fixtures::two_cycles(), fixtures::mixed(),
                                          fixtures::delta_succ()};
  for (int i = 0; i < 12; ++i) {
    const auto& f = bases[i % bases.size()];
    auto as = gen.transpositions(1 + gen.below(3), 8);
    auto p = finitary_product(eta_encode(as), f.perm, eta_encode({}), f.witness, f.cf);
    auto labels = oracle::component_labels(p.perm, 50, 1500);
    Fuel fuel = Fuel::unbounded();
    for (Nat x = 0; x < 50; ++x) {
      CHECK(p.cf(x, fuel) == oracle::orbit_closure(p.perm, x, 1500).closed);
      for (Nat y = 0; y < 50; ++y) CHECK(p.decider.related(x, y, fuel) == (labels[x] == labels[y]));
    }
  }
}
