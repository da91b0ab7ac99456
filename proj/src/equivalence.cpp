#include "permcyc/equivalence.hpp"

#include <algorithm>
#include <stdexcept>

#include "permcyc/cycles.hpp"
#include "permcyc/machine.hpp"
#include "permcyc/window.hpp"

namespace permcyc {

std::string to_string(HaltingVariant v) {
  return v == HaltingVariant::CF ? "CF" : "NonPermutable";
}

HaltingVariant halting_variant_from_string(const std::string& s) {
  if (s == "CF") return HaltingVariant::CF;
  if (s == "NonPermutable") return HaltingVariant::NonPermutable;
  throw std::invalid_argument("unknown halting variant: " + s);
}

namespace {

// Label of n given the halting step s (nullopt: not halted within the
// horizon the caller simulated, which must reach n).
bool label_from_step(HaltingVariant v, std::optional<Nat> s, Nat n) {
  if (v == HaltingVariant::CF) return s && *s <= n;
  if (n == 0) return true;
  return s && *s <= n - 1;
}

}  // namespace

bool halting_label(HaltingVariant v, Nat program, Nat n) {
  return label_from_step(v, halting_step(program, n), n);
}

// ---------------------------------------------------------------- functions

namespace {

class ConstFun final : public FunNode {
 public:
  explicit ConstFun(Nat c) : c_(c) {}
  std::string kind() const override { return "Const"; }
  Nat apply(Nat) const override { return c_; }
  Json to_json() const override { return {{"kind", kind()}, {"value", nat_json(c_)}}; }

 private:
  Nat c_;
};

class IdentityFun final : public FunNode {
 public:
  std::string kind() const override { return "Identity"; }
  Nat apply(Nat x) const override { return x; }
  Json to_json() const override { return {{"kind", kind()}}; }
};

class ModFun final : public FunNode {
 public:
  explicit ModFun(Nat m) : m_(m) {
    if (m == 0) throw std::invalid_argument("Mod needs a positive modulus");
  }
  std::string kind() const override { return "Mod"; }
  Nat apply(Nat x) const override { return x % m_; }
  Json to_json() const override { return {{"kind", kind()}, {"modulus", nat_json(m_)}}; }

 private:
  Nat m_;
};

class TableFun final : public FunNode {
 public:
  explicit TableFun(std::map<Nat, Nat> t) : table_(std::move(t)) {}
  std::string kind() const override { return "TableThenIdentity"; }
  Nat apply(Nat x) const override {
    auto it = table_.find(x);
    return it == table_.end() ? x : it->second;
  }
  Json to_json() const override {
    Json rows = Json::array();
    for (auto [k, v] : table_) rows.push_back(Json::array({nat_json(k), nat_json(v)}));
    return {{"kind", kind()}, {"table", rows}};
  }

 private:
  std::map<Nat, Nat> table_;
};

class HaltingLabelFun final : public FunNode {
 public:
  explicit HaltingLabelFun(HaltingVariant v) : v_(v) {}
  std::string kind() const override { return "HaltingLabel"; }
  Nat apply(Nat w) const override {
    auto [x, n] = unpair(w);
    return pair(x, halting_label(v_, x, n) ? 1 : 0);
  }
  Json to_json() const override { return {{"kind", kind()}, {"variant", to_string(v_)}}; }

 private:
  HaltingVariant v_;
};

class ComposeFun final : public FunNode {
 public:
  ComposeFun(FunExpr outer, FunExpr inner) : outer_(std::move(outer)), inner_(std::move(inner)) {}
  std::string kind() const override { return "Compose"; }
  Nat apply(Nat x) const override { return outer_->apply(inner_->apply(x)); }
  Json to_json() const override {
    return {{"kind", kind()}, {"outer", outer_->to_json()}, {"inner", inner_->to_json()}};
  }

 private:
  FunExpr outer_, inner_;
};

class PairLeftFun final : public FunNode {
 public:
  std::string kind() const override { return "PairLeft"; }
  Nat apply(Nat z) const override { return unpair(z).first; }
  Json to_json() const override { return {{"kind", kind()}}; }
};

class PairRightFun final : public FunNode {
 public:
  std::string kind() const override { return "PairRight"; }
  Nat apply(Nat z) const override { return unpair(z).second; }
  Json to_json() const override { return {{"kind", kind()}}; }
};

}  // namespace

FunExpr fun_const(Nat c) { return std::make_shared<ConstFun>(c); }
FunExpr fun_identity() { return std::make_shared<IdentityFun>(); }
FunExpr fun_mod(Nat m) { return std::make_shared<ModFun>(m); }
FunExpr fun_table(std::map<Nat, Nat> table) { return std::make_shared<TableFun>(std::move(table)); }
FunExpr fun_halting_label(HaltingVariant v) { return std::make_shared<HaltingLabelFun>(v); }
FunExpr fun_compose(FunExpr outer, FunExpr inner) {
  return std::make_shared<ComposeFun>(std::move(outer), std::move(inner));
}
FunExpr fun_pair_left() { return std::make_shared<PairLeftFun>(); }
FunExpr fun_pair_right() { return std::make_shared<PairRightFun>(); }

// ------------------------------------------------------------- equivalences

namespace {

class SingletonsEq final : public EqNode {
 public:
  std::string kind() const override { return "Singletons"; }
  bool related(Nat x, Nat y, Fuel&) const override { return x == y; }
  Json to_json() const override { return {{"kind", kind()}}; }
  std::vector<Nat> members_upto(Nat x, Fuel&) const override { return {x}; }
  std::optional<Nat> next_member(Nat, std::optional<Nat>, Fuel&) const override {
    return std::nullopt;
  }
};

class FullEq final : public EqNode {
 public:
  std::string kind() const override { return "Full"; }
  bool related(Nat, Nat, Fuel&) const override { return true; }
  Json to_json() const override { return {{"kind", kind()}}; }
  std::vector<Nat> members_upto(Nat x, Fuel&) const override {
    std::vector<Nat> out(x + 1);
    for (Nat i = 0; i <= x; ++i) out[i] = i;
    return out;
  }
  std::optional<Nat> next_member(Nat x, std::optional<Nat> bound, Fuel&) const override {
    Nat y = checked_add(x, 1);
    if (bound && y > *bound) return std::nullopt;
    return y;
  }
};

class ModuloEq final : public EqNode {
 public:
  explicit ModuloEq(Nat m) : m_(m) {
    if (m == 0) throw std::invalid_argument("Modulo needs m >= 1");
  }
  std::string kind() const override { return "Modulo"; }
  bool related(Nat x, Nat y, Fuel&) const override { return x % m_ == y % m_; }
  Json to_json() const override { return {{"kind", kind()}, {"modulus", nat_json(m_)}}; }
  std::vector<Nat> members_upto(Nat x, Fuel&) const override {
    std::vector<Nat> out;
    for (Nat y = x % m_; y <= x; y += m_) out.push_back(y);
    return out;
  }
  std::optional<Nat> next_member(Nat x, std::optional<Nat> bound, Fuel&) const override {
    Nat y = checked_add(x, m_);
    if (bound && y > *bound) return std::nullopt;
    return y;
  }
  Nat modulus() const { return m_; }

 private:
  Nat m_;
};

class FibersEq final : public EqNode {
 public:
  explicit FibersEq(FunExpr f) : f_(std::move(f)) {}
  std::string kind() const override { return "FibersOf"; }
  bool related(Nat x, Nat y, Fuel&) const override { return f_->apply(x) == f_->apply(y); }
  Json to_json() const override { return {{"kind", kind()}, {"fun", f_->to_json()}}; }
  std::vector<Nat> members_upto(Nat x, Fuel&) const override {
    Nat fx = f_->apply(x);
    std::vector<Nat> out;
    for (Nat y = 0; y < x; ++y)
      if (f_->apply(y) == fx) out.push_back(y);
    out.push_back(x);
    return out;
  }

 private:
  FunExpr f_;
};

class CycleEq final : public EqNode {
 public:
  CycleEq(PermExpr p, CycleWitness w) : p_(std::move(p)), w_(std::move(w)) {}
  std::string kind() const override { return "CycleEqOf"; }
  bool related(Nat x, Nat y, Fuel& fuel) const override { return x == y || w_.related(x, y, fuel); }
  Json to_json() const override {
    return {{"kind", kind()}, {"perm", p_->to_json()}, {"witness", w_.to_json()}};
  }

 private:
  PermExpr p_;
  CycleWitness w_;
};

class ImageEq final : public EqNode {
 public:
  ImageEq(EqExpr base, PermExpr h) : base_(std::move(base)), h_(std::move(h)) {}
  std::string kind() const override { return "Image"; }
  bool related(Nat x, Nat y, Fuel& fuel) const override {
    return base_->related(h_->apply_inv(x, fuel), h_->apply_inv(y, fuel), fuel);
  }
  Json to_json() const override {
    return {{"kind", kind()}, {"base", base_->to_json()}, {"perm", h_->to_json()}};
  }

 private:
  EqExpr base_;
  PermExpr h_;
};

class SupportEq final : public EqNode {
 public:
  SupportEq(EqExpr eq, Nat origin) : eq_(std::move(eq)), origin_(origin) {}
  std::string kind() const override { return "SupportOf"; }
  bool related(Nat x, Nat y, Fuel& fuel) const override {
    return x == y || (eq_->related(origin_, x, fuel) && eq_->related(origin_, y, fuel));
  }
  Json to_json() const override {
    return {{"kind", kind()}, {"eq", eq_->to_json()}, {"origin", nat_json(origin_)}};
  }
  std::vector<Nat> members_upto(Nat x, Fuel& fuel) const override {
    if (!eq_->related(origin_, x, fuel)) return {x};
    return eq_->members_upto(x, fuel);
  }
  std::optional<Nat> next_member(Nat x, std::optional<Nat> bound, Fuel& fuel) const override {
    if (!eq_->related(origin_, x, fuel)) return std::nullopt;
    return eq_->next_member(x, bound, fuel);
  }

 private:
  EqExpr eq_;
  Nat origin_;
};

// Largest t with pair(z, t) <= b, if any.
std::optional<Nat> inner_bound(Nat z, Nat b) {
  if (pair(z, 0) > b) return std::nullopt;
  Nat lo = 0, hi = Nat(1) << 32;
  while (hi - lo > 1) {
    Nat mid = lo + (hi - lo) / 2;
    bool fits;
    try {
      fits = pair(z, mid) <= b;
    } catch (const OverflowError&) {
      fits = false;
    }
    if (fits) lo = mid; else hi = mid;
  }
  return lo;
}

class CoproductEq : public EqNode {
 public:
  explicit CoproductEq(FamilyExpr fam) : fam_(std::move(fam)) {}
  std::string kind() const override { return "Coproduct"; }
  bool related(Nat a, Nat b, Fuel& fuel) const override {
    auto [z, x] = unpair(a);
    auto [z2, x2] = unpair(b);
    return z == z2 && fam_->related(z, x, x2, fuel);
  }
  Json to_json() const override { return {{"kind", kind()}, {"family", fam_->to_json()}}; }
  std::vector<Nat> members_upto(Nat a, Fuel& fuel) const override {
    auto [z, x] = unpair(a);
    std::vector<Nat> out;
    for (Nat m : fam_->member(z)->members_upto(x, fuel)) out.push_back(pair(z, m));
    return out;
  }
  std::optional<Nat> next_member(Nat a, std::optional<Nat> bound, Fuel& fuel) const override {
    auto [z, x] = unpair(a);
    std::optional<Nat> ib;
    if (bound) {
      ib = inner_bound(z, *bound);
      if (!ib || *ib <= x) return std::nullopt;
    }
    auto n = fam_->member(z)->next_member(x, ib, fuel);
    if (!n) return std::nullopt;
    return pair(z, *n);
  }
  const FamilyExpr& family() const { return fam_; }

 private:
  FamilyExpr fam_;
};

class HaltingBlocksEq final : public CoproductEq {
 public:
  explicit HaltingBlocksEq(HaltingVariant v) : CoproductEq(family_halting(v)), v_(v) {}
  std::string kind() const override { return "HaltingBlocks"; }
  Json to_json() const override { return {{"kind", kind()}, {"variant", to_string(v_)}}; }

 private:
  HaltingVariant v_;
};

// Block structure of n -> r_x(n) for one fixed program x.
class HaltingMemberEq final : public EqNode {
 public:
  HaltingMemberEq(Nat program, HaltingVariant v) : x_(program), v_(v) {}
  std::string kind() const override { return "HaltingMember"; }
  bool related(Nat n, Nat m, Fuel&) const override {
    auto s = halting_step(x_, std::max(n, m));
    return label_from_step(v_, s, n) == label_from_step(v_, s, m);
  }
  Json to_json() const override {
    return {{"kind", kind()}, {"program", nat_json(x_)}, {"variant", to_string(v_)}};
  }
  std::vector<Nat> members_upto(Nat n, Fuel&) const override {
    auto s = halting_step(x_, n);
    bool target = label_from_step(v_, s, n);
    std::vector<Nat> out;
    for (Nat i = 0; i <= n; ++i)
      if (label_from_step(v_, s, i) == target) out.push_back(i);
    return out;
  }
  std::optional<Nat> next_member(Nat n, std::optional<Nat> bound, Fuel& fuel) const override {
    ToyProgram p = decode_program(x_);
    MachineConfig c = initial_config(x_);
    auto label_at = [&](Nat i) {
      while (c.steps < i && !c.halted) step(p, c);
      std::optional<Nat> s;
      if (c.halted) s = c.steps;
      return label_from_step(v_, s, i);
    };
    bool target = label_at(n);
    for (Nat m = checked_add(n, 1);; ++m) {
      if (bound && m > *bound) return std::nullopt;
      fuel.consume();
      if (label_at(m) == target) return m;
    }
  }

 private:
  Nat x_;
  HaltingVariant v_;
};

class PiXYEq final : public EqNode {
 public:
  PiXYEq(PermExpr f, Nat x, Nat y) : f_(std::move(f)), x_(x), y_(y) {}
  std::string kind() const override { return "PiXY"; }
  bool related(Nat i, Nat j, Fuel& fuel) const override {
    return i == j || !hit_within(std::max(i, j), fuel);
  }
  Json to_json() const override {
    return {{"kind", kind()}, {"perm", f_->to_json()}, {"x", nat_json(x_)}, {"y", nat_json(y_)}};
  }
  std::vector<Nat> members_upto(Nat i, Fuel& fuel) const override {
    if (hit_within(i, fuel)) return {i};
    std::vector<Nat> out(i + 1);
    for (Nat t = 0; t <= i; ++t) out[t] = t;
    return out;
  }
  std::optional<Nat> next_member(Nat i, std::optional<Nat> bound, Fuel& fuel) const override {
    Nat j = checked_add(i, 1);
    if (bound && j > *bound) return std::nullopt;
    if (hit_within(j, fuel)) return std::nullopt;
    return j;
  }

 private:
  // Some |k| <= limit with f^k(x) = y.
  bool hit_within(Nat limit, Fuel& fuel) const {
    if (x_ == y_) return true;
    Nat fwd = x_, bwd = x_;
    for (Nat k = 1; k <= limit; ++k) {
      fwd = f_->apply(fwd, fuel);
      bwd = f_->apply_inv(bwd, fuel);
      if (fwd == y_ || bwd == y_) return true;
      if (fwd == x_) return false;  // finite cycle closed without meeting y
    }
    return false;
  }

  PermExpr f_;
  Nat x_, y_;
};

// ----------------------------------------------------------------- families

class ConstantFamily final : public FamilyNode {
 public:
  explicit ConstantFamily(EqExpr eq) : eq_(std::move(eq)) {}
  std::string kind() const override { return "ConstantFamily"; }
  EqExpr member(Nat) const override { return eq_; }
  Json to_json() const override { return {{"kind", kind()}, {"eq", eq_->to_json()}}; }
  bool related(Nat, Nat x, Nat y, Fuel& fuel) const override { return eq_->related(x, y, fuel); }

 private:
  EqExpr eq_;
};

class HaltingFamily final : public FamilyNode {
 public:
  explicit HaltingFamily(HaltingVariant v) : v_(v) {}
  std::string kind() const override { return "HaltingFamily"; }
  EqExpr member(Nat x) const override { return std::make_shared<HaltingMemberEq>(x, v_); }
  Json to_json() const override { return {{"kind", kind()}, {"variant", to_string(v_)}}; }

 private:
  HaltingVariant v_;
};

class PiXYFamily final : public FamilyNode {
 public:
  explicit PiXYFamily(PermExpr f) : f_(std::move(f)) {}
  std::string kind() const override { return "PiXYFamily"; }
  EqExpr member(Nat z) const override {
    auto [x, y] = unpair(z);
    return std::make_shared<PiXYEq>(f_, x, y);
  }
  Json to_json() const override { return {{"kind", kind()}, {"perm", f_->to_json()}}; }

 private:
  PermExpr f_;
};

}  // namespace

EqExpr eq_singletons() { return std::make_shared<SingletonsEq>(); }
EqExpr eq_full() { return std::make_shared<FullEq>(); }
EqExpr eq_modulo(Nat m) { return std::make_shared<ModuloEq>(m); }
EqExpr eq_fibers(FunExpr f) { return std::make_shared<FibersEq>(std::move(f)); }
EqExpr eq_cycles(PermExpr p, const CycleWitness& w) {
  CycleWitness d = w.kind() == WitnessKind::Decider ? w : witness_convert(w, WitnessKind::Decider);
  return std::make_shared<CycleEq>(std::move(p), std::move(d));
}
EqExpr eq_support_of(EqExpr eq, Nat origin) { return std::make_shared<SupportEq>(std::move(eq), origin); }
EqExpr eq_halting_blocks(HaltingVariant v) { return std::make_shared<HaltingBlocksEq>(v); }
EqExpr eq_pixy(PermExpr f, Nat x, Nat y) { return std::make_shared<PiXYEq>(std::move(f), x, y); }
EqExpr coproduct(FamilyExpr family) { return std::make_shared<CoproductEq>(std::move(family)); }
EqExpr eq_image(EqExpr base, PermExpr h) {
  return std::make_shared<ImageEq>(std::move(base), std::move(h));
}

FamilyExpr family_constant(EqExpr eq) { return std::make_shared<ConstantFamily>(std::move(eq)); }
FamilyExpr family_halting(HaltingVariant v) { return std::make_shared<HaltingFamily>(v); }
FamilyExpr family_pixy(PermExpr f) { return std::make_shared<PiXYFamily>(std::move(f)); }

EqExpr halting_member_eq(Nat program, HaltingVariant v) {
  return std::make_shared<HaltingMemberEq>(program, v);
}

// --------------------------------------------------------------- operations

bool eq_decide(const EqExpr& eq, Nat x, Nat y, Fuel& fuel) { return eq->related(x, y, fuel); }

BlockDecider block_decider(const EqExpr& eq, Nat x) { return BlockDecider{eq, x}; }

SearchOutcome<Nat> nth_block_representative(const EqExpr& eq, Nat i, Fuel& fuel) {
  // n(0) = 0; n(j) = least x' > n(j-1) unrelated to n(0), ..., n(j-1).
  std::vector<Nat> reps;
  Nat probes = 0;
  Fuel inner = Fuel::unbounded();
  for (Nat cand = 0;; ++cand) {
    if (!fuel.try_consume()) return SearchOutcome<Nat>::Exhausted(probes);
    ++probes;
    bool fresh = std::none_of(reps.begin(), reps.end(),
                              [&](Nat r) { return eq->related(r, cand, inner); });
    if (!fresh) continue;
    if (reps.size() == i) return SearchOutcome<Nat>::Found(cand, probes);
    reps.push_back(cand);
  }
}

std::optional<BlockDecider> nth_block_decider(const EqExpr& eq, Nat i, Fuel& fuel) {
  auto r = nth_block_representative(eq, i, fuel);
  if (!r.found()) return std::nullopt;
  return BlockDecider{eq, *r.value};
}

Nat least_representative(const EqExpr& eq, Nat x) {
  Fuel inner = Fuel::unbounded();
  for (Nat y = 0; y < x; ++y)
    if (eq->related(x, y, inner)) return y;
  return x;
}

Nat block_index(const EqExpr& eq, Nat x, Fuel& fuel) {
  Nat target = least_representative(eq, x);
  std::vector<Nat> reps;
  Fuel inner = Fuel::unbounded();
  for (Nat cand = 0; cand <= target; ++cand) {
    fuel.consume();
    bool fresh = std::none_of(reps.begin(), reps.end(),
                              [&](Nat r) { return eq->related(r, cand, inner); });
    if (!fresh) continue;
    if (cand == target) return reps.size();
    reps.push_back(cand);
  }
  throw std::logic_error("least representative was not enumerated");
}

std::optional<std::vector<Nat>> enumerate_block(const EqExpr& eq, Nat i, Nat count, Fuel& fuel) {
  auto rep = nth_block_representative(eq, i, fuel);
  if (!rep.found()) return std::nullopt;
  std::vector<Nat> out;
  Fuel inner = Fuel::unbounded();
  for (Nat y = *rep.value; out.size() < count; ++y) {
    if (y != *rep.value && !fuel.try_consume()) return std::nullopt;
    if (eq->related(*rep.value, y, inner)) out.push_back(y);
  }
  return out;
}

namespace {
bool iso_row(const std::vector<Nat>& t, const EqExpr& a, const EqExpr& b, Nat x) {
  Fuel fuel(kDefaultFuel);
  for (Nat y = 0; y < t.size(); ++y)
    if (a->related(x, y, fuel) != b->related(t[x], t[y], fuel)) return false;
  return true;
}

std::vector<Nat> images(const PermExpr& theta, Nat window) {
  std::vector<Nat> t(window);
  Fuel fuel(kDefaultFuel);
  for (Nat x = 0; x < window; ++x) t[x] = theta->apply(x, fuel);
  return t;
}
}  // namespace

bool is_isomorphism_on_window(const PermExpr& theta, const EqExpr& a, const EqExpr& b, Nat window) {
  auto t = images(theta, window);
  return window::all_of(window, [&](Nat x) { return iso_row(t, a, b, x); });
}

bool is_isomorphism_on_window_serial(const PermExpr& theta, const EqExpr& a, const EqExpr& b,
                                     Nat window) {
  auto t = images(theta, window);
  return window::all_of_serial(window, [&](Nat x) { return iso_row(t, a, b, x); });
}

}  // namespace permcyc
