#include "permcyc/gadgets.hpp"

#include <unordered_set>

#include "permcyc/cycles.hpp"
#include "permcyc/normalform.hpp"
#include "permcyc/permutation.hpp"

namespace permcyc {

FamilyExpr halting_family(HaltingVariant v) { return family_halting(v); }
EqExpr halting_equivalence(HaltingVariant v) { return eq_halting_blocks(v); }

namespace {

class HaltingStepRho final : public RhoNode {
 public:
  std::string kind() const override { return "HaltingStepRho"; }
  RhoKind rho_kind() const override { return RhoKind::CoproductGreaterElement; }
  Nat eval(Nat w, Fuel&) const override {
    auto [x, n] = unpair(w);
    Nat next = checked_add(n, 1);
    auto s = halting_step(x, next);
    return s && *s == next ? 0 : 1;
  }
  Json to_json() const override { return {{"kind", kind()}}; }
};

class AdjacentRelatedRho final : public RhoNode {
 public:
  explicit AdjacentRelatedRho(PermExpr f) : fam_(family_pixy(f)), f_(std::move(f)) {}
  std::string kind() const override { return "AdjacentRelatedRho"; }
  RhoKind rho_kind() const override { return RhoKind::CoproductGreaterElement; }
  Nat eval(Nat w, Fuel& fuel) const override {
    auto [z, i] = unpair(w);
    return fam_->member(z)->related(checked_add(i, 1), i, fuel) ? 1 : 0;
  }
  Json to_json() const override { return {{"kind", kind()}, {"perm", f_->to_json()}}; }

 private:
  FamilyExpr fam_;
  PermExpr f_;
};

class OddLengthPerm final : public PermNode {
 public:
  explicit OddLengthPerm(PermExpr g) : g_(std::move(g)) {}
  std::string kind() const override { return "OddLengthGadget"; }
  Nat apply(Nat w, Fuel& fuel) const override {
    auto [x, y, i] = unpack3(w);
    if (i == 0) return pack3(x, y, 1);
    if (i == 1) return y == x ? pack3(x, x, 2) : pack3(x, g_->apply(y, fuel), 0);
    if (i == 2 && y == x) return pack3(x, g_->apply(x, fuel), 0);
    return w;
  }
  Nat apply_inv(Nat w, Fuel& fuel) const override {
    auto [x, y, i] = unpack3(w);
    if (i == 1) return pack3(x, y, 0);
    if (i == 2 && y == x) return pack3(x, x, 1);
    if (i == 0) {
      Nat y0 = g_->apply_inv(y, fuel);
      return y0 == x ? pack3(x, x, 2) : pack3(x, y0, 1);
    }
    return w;
  }
  Json to_json() const override { return {{"kind", kind()}, {"g", g_->to_json()}}; }

 private:
  PermExpr g_;
};

// A named node whose evaluation is another expression's.
class AliasPerm : public PermNode {
 public:
  explicit AliasPerm(PermExpr impl) : impl_(std::move(impl)) {}
  Nat apply(Nat x, Fuel& fuel) const override { return impl_->apply(x, fuel); }
  Nat apply_inv(Nat x, Fuel& fuel) const override { return impl_->apply_inv(x, fuel); }
  EqExpr known_partition() const override { return impl_->known_partition(); }

 private:
  PermExpr impl_;
};

class InterredPerm final : public AliasPerm {
 public:
  explicit InterredPerm(PermExpr f)
      : AliasPerm(coproduct_perm_from_rho(family_pixy(f), rho_adjacent_related(f))), f_(std::move(f)) {}
  std::string kind() const override { return "InterredCFPerm"; }
  Json to_json() const override { return {{"kind", kind()}, {"perm", f_->to_json()}}; }

 private:
  PermExpr f_;
};

// Shared state of the reduction: which points are f^k(x) with k even.
struct ConjCore {
  PermExpr f;
  CycleWitness w;
  Nat x;

  bool even(Nat a, Fuel& fuel) const {
    if (!w.related(x, a, fuel)) return false;
    auto k = reachability_semidecider(f, x, a, fuel);
    if (!k.found()) throw FuelExhausted("cycle witness claims a point the orbit never reaches");
    return *k.value % 2 == 0;
  }

  Json json() const { return {{"perm", f->to_json()}, {"witness", w.to_json()}, {"x", nat_json(x)}}; }
};

class ConjBlocksEq final : public EqNode {
 public:
  explicit ConjBlocksEq(std::shared_ptr<const ConjCore> core) : core_(std::move(core)) {}
  std::string kind() const override { return "ConjReductionBlocks"; }
  bool related(Nat a, Nat b, Fuel& fuel) const override {
    return a == b || (core_->even(a, fuel) && core_->even(b, fuel));
  }
  Json to_json() const override {
    Json j = core_->json();
    j["kind"] = kind();
    return j;
  }
  std::vector<Nat> members_upto(Nat a, Fuel& fuel) const override {
    if (!core_->even(a, fuel)) return {a};
    std::vector<Nat> out;
    for (Nat c = 0; c < a; ++c)
      if (core_->even(c, fuel)) out.push_back(c);
    out.push_back(a);
    return out;
  }
  std::optional<Nat> next_member(Nat a, std::optional<Nat> bound, Fuel& fuel) const override {
    if (!core_->even(a, fuel)) return std::nullopt;
    return EqNode::next_member(a, bound, fuel);
  }

 private:
  std::shared_ptr<const ConjCore> core_;
};

// Lists [x]_f in xi order until an even-exponent point above y shows up or
// the cycle closes.
class ConjRho final : public RhoNode {
 public:
  explicit ConjRho(std::shared_ptr<const ConjCore> core) : core_(std::move(core)) {}
  std::string kind() const override { return "ConjReductionRho"; }
  RhoKind rho_kind() const override { return RhoKind::GreaterElement; }
  Nat eval(Nat y, Fuel& fuel) const override {
    if (!core_->even(y, fuel)) return 0;
    const PermExpr& f = core_->f;
    std::unordered_set<Nat> seen{core_->x};
    Nat fwd = core_->x, bwd = core_->x;
    if (core_->x > y) return 1;
    for (Nat i = 1;; ++i) {
      fuel.consume();
      Int k = delta_inv(i);
      Nat v = k < 0 ? (bwd = f->apply_inv(bwd, fuel)) : (fwd = f->apply(fwd, fuel));
      if (!seen.insert(v).second) return 0;
      if (k % 2 == 0 && v > y) return 1;
    }
  }
  Json to_json() const override {
    Json j = core_->json();
    j["kind"] = kind();
    return j;
  }

 private:
  std::shared_ptr<const ConjCore> core_;
};

class ConjReductionPerm final : public AliasPerm {
 public:
  explicit ConjReductionPerm(std::shared_ptr<const ConjCore> core)
      : AliasPerm(perm_from_rho(std::make_shared<ConjBlocksEq>(core), std::make_shared<ConjRho>(core))),
        core_(std::move(core)) {}
  std::string kind() const override { return "ConjReductionPerm"; }
  Json to_json() const override {
    Json j = core_->json();
    j["kind"] = kind();
    return j;
  }

 private:
  std::shared_ptr<const ConjCore> core_;
};

std::shared_ptr<const ConjCore> make_core(PermExpr f, const CycleWitness& w, Nat x) {
  CycleWitness d = w.kind() == WitnessKind::Decider ? w : witness_convert(w, WitnessKind::Decider);
  return std::make_shared<const ConjCore>(ConjCore{std::move(f), std::move(d), x});
}

}  // namespace

RhoExpr rho_halting_step() { return std::make_shared<HaltingStepRho>(); }

PermExpr cf_hard_perm() { return coproduct_perm_from_rho(halting_family(HaltingVariant::CF), rho_halting_step()); }

PermExpr odd_length_gadget(PermExpr g) { return std::make_shared<OddLengthPerm>(std::move(g)); }
Nat odd_length_embed(Nat x) { return pack3(x, x, 0); }

RhoExpr rho_adjacent_related(PermExpr f) { return std::make_shared<AdjacentRelatedRho>(std::move(f)); }
PermExpr interred_cf_perm(PermExpr f) { return std::make_shared<InterredPerm>(std::move(f)); }

CdToCf reduce_cd_to_cf(PermExpr f) {
  return {interred_cf_perm(std::move(f)), [](Nat w) { return pair(w, 0); }};
}

CfToCd reduce_cf_to_cd(PermExpr g) {
  PermExpr gp = odd_length_gadget(std::move(g));
  return {perm_compose(gp, gp), gp, odd_length_embed, [](Nat x) { return pack3(x, x, 1); }};
}

EqExpr conj_reduction_blocks(PermExpr f, const CycleWitness& w, Nat x) {
  return std::make_shared<ConjBlocksEq>(make_core(std::move(f), w, x));
}

ConjReduction conj_reduction_perm(PermExpr f, const CycleWitness& w, Nat x) {
  auto core = make_core(std::move(f), w, x);
  PermExpr fp = std::make_shared<ConjReductionPerm>(core);
  return {fp, intrinsic_witness(fp)};
}

}  // namespace permcyc
