#include "permcyc/conjugacy.hpp"

#include "permcyc/cycles.hpp"
#include "permcyc/equivalence.hpp"
#include "permcyc/permutation.hpp"
#include "permcyc/window.hpp"

namespace permcyc {

namespace {

class ConjugatorPerm final : public PermNode {
 public:
  ConjugatorPerm(PermExpr f, PermExpr g, CycleWitness w) : f_(std::move(f)), g_(std::move(g)), w_(std::move(w)) {}
  std::string kind() const override { return "ConjugatorSamePartition"; }
  Nat apply(Nat x, Fuel& fuel) const override { return carry(f_, g_, x, fuel); }
  Nat apply_inv(Nat z, Fuel& fuel) const override { return carry(g_, f_, z, fuel); }
  Json to_json() const override {
    return {{"kind", kind()}, {"f", f_->to_json()}, {"g", g_->to_json()}, {"witness", w_.to_json()}};
  }

 private:
  // from^k(y) = x  ->  to^k(y), y the least element of the block of x.
  Nat carry(const PermExpr& from, const PermExpr& to, Nat x, Fuel& fuel) const {
    Nat y = x;
    for (Nat c = 0; c < x; ++c)
      if (w_.related(x, c, fuel)) {
        y = c;
        break;
      }
    auto k = reachability_semidecider(from, y, x, fuel);
    if (!k.found()) throw FuelExhausted("conjugator: exponent search exhausted");
    return to->power(y, *k.value, fuel);
  }

  PermExpr f_, g_;
  CycleWitness w_;
};

bool conjugates_at(const PermExpr& f, const PermExpr& g, const PermExpr& h, Nat x) {
  Fuel fuel(kDefaultFuel);
  return h->apply_inv(g->apply(h->apply(x, fuel), fuel), fuel) == f->apply(x, fuel);
}

}  // namespace

PermExpr conjugator_same_partition(PermExpr f, PermExpr g, const CycleWitness& w) {
  CycleWitness d = w.kind() == WitnessKind::Decider ? w : witness_convert(w, WitnessKind::Decider);
  return std::make_shared<ConjugatorPerm>(std::move(f), std::move(g), std::move(d));
}

PermExpr conjugator_from_isomorphism(PermExpr f, PermExpr g, PermExpr theta, const CycleWitness& w) {
  PermExpr pulled = perm_compose(perm_inverse(theta), perm_compose(std::move(g), theta));
  return perm_compose(theta, conjugator_same_partition(std::move(f), std::move(pulled), w));
}

bool Isomorphism::verify(Nat window) const { return is_isomorphism_on_window(theta, from, to, window); }

Isomorphism isomorphism_from_conjugator(PermExpr h, EqExpr part_f, EqExpr part_g) {
  return {std::move(h), std::move(part_f), std::move(part_g)};
}

PermExpr conjugate_perm(PermExpr f, PermExpr h) {
  return perm_compose(h, perm_compose(std::move(f), perm_inverse(h)));
}

bool verify_conjugation(const PermExpr& f, const PermExpr& g, const PermExpr& h, Nat window) {
  return window::all_of(window, [&](Nat x) { return conjugates_at(f, g, h, x); });
}

bool verify_conjugation_serial(const PermExpr& f, const PermExpr& g, const PermExpr& h, Nat window) {
  return window::all_of_serial(window, [&](Nat x) { return conjugates_at(f, g, h, x); });
}

}  // namespace permcyc
