#include "doctest.h"
#include "oracles.hpp"
#include "permcyc/permutation.hpp"

using namespace permcyc;

namespace {

// Not a bijection: 0 and 1 both go to 1.
class Broken final : public PermNode {
 public:
  std::string kind() const override { return "Broken"; }
  Nat apply(Nat x, Fuel&) const override { return x == 0 ? 1 : x; }
  Nat apply_inv(Nat x, Fuel&) const override { return x; }
  Json to_json() const override { return {{"kind", kind()}}; }
};

Nat ev(const PermExpr& p, Nat x) {
  Fuel fuel(kDefaultFuel);
  return perm_eval(p, x, fuel);
}

}  // namespace

TEST_CASE("g and DeltaSucc examples") {
  PermExpr g = perm_g();
  CHECK(ev(g, 2) == 0);
  CHECK(ev(g, 0) == 4);
  CHECK(ev(g, 6) == 2);
  CHECK(ev(g, 7) == 7);
  CHECK(ev(perm_delta_succ(), 1) == 0);
  CHECK(ev(perm_delta_succ(), 0) == 2);
  CHECK(ev(perm_delta_succ(), 3) == 1);
}

TEST_CASE("eta codes") {
  CHECK(eta_decode(eta_encode({}))->kind() == "Identity");
  PermExpr t = eta_decode(eta_encode({{0, 1}}));
  CHECK(t->kind() == "Transposition");
  CHECK(ev(t, 0) == 1);
  // (0 1) . (1 2): 2 -> 1 -> 0.
  CHECK(ev(eta_decode(eta_encode({{0, 1}, {1, 2}})), 2) == 0);
  oracle::Gen gen(21);
  for (int i = 0; i < 200; ++i) {
    auto ts = gen.transpositions(1 + gen.below(3), 8);
    CHECK(eta_decode_list(eta_encode(ts)) == ts);
  }
  for (int i = 0; i < 50; ++i) {
    auto ts = gen.transpositions(2, 20);
    CHECK(eta_decode_list(eta_encode(ts)) == ts);
  }
  // Codes grow doubly exponentially with the length of the list.
  CHECK_THROWS_AS(eta_encode({{0, 19}, {1, 18}, {2, 17}, {3, 16}}), OverflowError);
  // n = 0 ignores the second component.
  CHECK(eta_decode_list(pair(0, 17)).empty());
}

TEST_CASE("orbit_window examples") {
  Fuel fuel(kDefaultFuel);
  CHECK(orbit_window(perm_g(), 0, 5, fuel) ==
        std::vector<OrbitEntry>{{0, 0}, {-1, 2}, {1, 4}, {-2, 6}, {2, 8}});
  CHECK(orbit_window(perm_identity(), 7, 3, fuel) == std::vector<OrbitEntry>{{0, 7}, {-1, 7}, {1, 7}});
  CHECK(orbit_window(perm_transposition(0, 1), 0, 3, fuel) ==
        std::vector<OrbitEntry>{{0, 0}, {-1, 1}, {1, 1}});
}

TEST_CASE("window_bijection_check examples") {
  CHECK(window_bijection_check(perm_identity(), 10'000));
  CHECK(window_bijection_check(perm_delta_succ(), 10'000));
  PermExpr broken = std::make_shared<Broken>();
  CHECK_FALSE(window_bijection_check(broken, 10));
  CHECK_FALSE(window_bijection_check_serial(broken, 10));
  CHECK(window_bijection_check_serial(perm_g(), 2000));
}

TEST_CASE("piecewise rules must form a bijection") {
  CHECK_THROWS_AS(perm_piecewise({PiecewiseRule::point(0, 1)}), PreconditionViolation);
  CHECK_THROWS_AS(perm_piecewise({PiecewiseRule::affine(2, 0, 2, 0)}), PreconditionViolation);
  PermExpr swap = perm_piecewise({PiecewiseRule::point(3, 9), PiecewiseRule::point(9, 3)});
  CHECK(ev(swap, 3) == 9);
  CHECK(ev(swap, 4) == 4);
}

TEST_CASE("finitary products agree with an explicit table") {
  oracle::Gen gen(22);
  for (int i = 0; i < 100; ++i) {
    auto ts = gen.transpositions(1 + gen.below(8), 25);
    PermExpr p = perm_finitary(ts);
    oracle::Finitary truth(ts);
    Fuel fuel(kDefaultFuel);
    for (Nat x = 0; x < 30; ++x) {
      CHECK(p->apply(x, fuel) == truth.apply(x));
      CHECK(p->apply_inv(p->apply(x, fuel), fuel) == x);
      Int len = static_cast<Int>(truth.cycle_length(x));
      CHECK(p->power(x, len, fuel) == x);
      CHECK(p->power(x, -1, fuel) == p->apply_inv(x, fuel));
      CHECK(p->power(x, 3 * len + 1, fuel) == truth.apply(x));
    }
    CHECK(finitary_transpositions(p) == ts);
  }
}

TEST_CASE("default power iterates both directions") {
  PermExpr g = perm_g();
  Fuel fuel(kDefaultFuel);
  Nat v = 0;
  for (Int k = 1; k <= 20; ++k) {
    v = g->apply(v, fuel);
    CHECK(g->power(0, k, fuel) == v);
  }
  CHECK(g->power(0, -3, fuel) == 10);
  CHECK(perm_delta_succ()->power(0, -3, fuel) == 5);
  CHECK(perm_delta_succ()->power(0, 40, fuel) == 80);
}

TEST_CASE("composition and inverse") {
  PermExpr c = perm_compose(perm_transposition(0, 1), perm_transposition(1, 2));
  CHECK(ev(c, 2) == 0);
  CHECK(ev(c, 0) == 1);
  PermExpr inv = perm_inverse(perm_g());
  for (Nat x = 0; x < 200; ++x) CHECK(ev(inv, ev(perm_g(), x)) == x);
  Fuel fuel(kDefaultFuel);
  CHECK(perm_eval_inv(perm_g(), 0, fuel) == 2);
}

TEST_CASE("parity swap") {
  for (Nat x = 0; x < 100; ++x) CHECK(ev(perm_parity_swap(), x) == (x % 2 == 0 ? x + 1 : x - 1));
}

TEST_CASE("parallel and serial bijection checks agree") {
  oracle::Gen gen(23);
  for (int i = 0; i < 10; ++i) {
    PermExpr p = perm_finitary(gen.transpositions(6, 50));
    CHECK(window_bijection_check(p, 500) == window_bijection_check_serial(p, 500));
  }
}
