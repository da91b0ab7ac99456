#include "permcyc/normalform.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "permcyc/cycles.hpp"
#include "permcyc/window.hpp"

namespace permcyc {

namespace {

using Next = std::function<std::optional<Nat>(Nat)>;

// xs = x_0 < ... < x_k = x are the members of x's block up to x; next(y) is
// the least member above y, if any.
Nat table_forward(const std::vector<Nat>& xs, const Next& next) {
  std::size_t k = xs.size() - 1;
  if (k % 2 == 0) {
    if (auto n1 = next(xs[k])) {
      if (auto n2 = next(*n1)) return *n2;
      return *n1;
    }
    return k == 0 ? xs[0] : xs[k - 1];
  }
  return k == 1 ? xs[0] : xs[k - 2];
}

Nat table_backward(const std::vector<Nat>& xs, const Next& next) {
  std::size_t k = xs.size() - 1;
  if (k == 0) return next(xs[0]).value_or(xs[0]);
  if (k % 2 == 0) return xs[k - 2];
  if (auto n1 = next(xs[k])) {
    if (auto n2 = next(*n1)) return *n2;
    return *n1;
  }
  return xs[k - 1];
}

void require_rho(const RhoExpr& rho, RhoKind kind) {
  if (rho->rho_kind() != kind)
    throw PreconditionViolation("expected a " + to_string(kind) + " rho, got " + to_string(rho->rho_kind()));
}

// ------------------------------------------------------------------- rhos

class ConstantRho final : public RhoNode {
 public:
  ConstantRho(RhoKind k, Nat v) : k_(k), v_(v) {}
  std::string kind() const override { return "ConstantRho"; }
  RhoKind rho_kind() const override { return k_; }
  Nat eval(Nat, Fuel&) const override { return v_; }
  Json to_json() const override {
    return {{"kind", kind()}, {"rho_kind", to_string(k_)}, {"value", nat_json(v_)}};
  }

 private:
  RhoKind k_;
  Nat v_;
};

class TableRho final : public RhoNode {
 public:
  TableRho(RhoKind k, std::map<Nat, Nat> t, Nat fallback) : k_(k), t_(std::move(t)), fallback_(fallback) {}
  std::string kind() const override { return "TableRho"; }
  RhoKind rho_kind() const override { return k_; }
  Nat eval(Nat x, Fuel&) const override {
    auto it = t_.find(x);
    return it == t_.end() ? fallback_ : it->second;
  }
  Json to_json() const override {
    Json rows = Json::array();
    for (auto [a, b] : t_) rows.push_back(Json::array({nat_json(a), nat_json(b)}));
    return {{"kind", kind()}, {"rho_kind", to_string(k_)}, {"table", rows}, {"default", nat_json(fallback_)}};
  }

 private:
  RhoKind k_;
  std::map<Nat, Nat> t_;
  Nat fallback_;
};

class FiniteBlocksRho final : public RhoNode {
 public:
  FiniteBlocksRho(EqExpr eq, std::vector<BlockCardinality> blocks) : eq_(std::move(eq)), blocks_(std::move(blocks)) {}
  std::string kind() const override { return "FiniteBlocksRho"; }
  RhoKind rho_kind() const override { return RhoKind::Cardinality; }
  Nat eval(Nat x, Fuel& fuel) const override {
    for (const auto& b : blocks_)
      if (eq_->related(b.rep, x, fuel)) return b.size.value_or(0);
    throw PreconditionViolation(std::to_string(x) + " lies outside the listed blocks");
  }
  Json to_json() const override {
    Json bs = Json::array();
    for (const auto& b : blocks_)
      bs.push_back({{"rep", nat_json(b.rep)}, {"size", b.size ? nat_json(*b.size) : Json(nullptr)}});
    return {{"kind", kind()}, {"eq", eq_->to_json()}, {"blocks", bs}};
  }

 private:
  EqExpr eq_;
  std::vector<BlockCardinality> blocks_;
};

std::vector<Nat> cycle_members_upto(const CycleWitness& w, Nat x, Fuel& fuel) {
  std::vector<Nat> out;
  for (Nat y = 0; y < x; ++y)
    if (w.related(x, y, fuel)) out.push_back(y);
  out.push_back(x);
  return out;
}

class FromPermRho final : public RhoNode {
 public:
  FromPermRho(PermExpr f, CycleWitness w) : f_(std::move(f)), w_(std::move(w)) {}
  std::string kind() const override { return "FromPermRho"; }
  RhoKind rho_kind() const override { return RhoKind::GreaterElement; }
  Nat eval(Nat x, Fuel& fuel) const override {
    return finite_union_check(f_, cycle_members_upto(w_, x, fuel), fuel).closed ? 0 : 1;
  }
  Json to_json() const override { return {{"kind", kind()}, {"perm", f_->to_json()}, {"witness", w_.to_json()}}; }

 private:
  PermExpr f_;
  CycleWitness w_;
};

// ----------------------------------------------------------- permutations

class NormalFromSetPerm final : public PermNode {
 public:
  NormalFromSetPerm(EqExpr eq, Nat origin) : eq_(std::move(eq)), origin_(origin) {
    Json j = eq_->to_json();
    if (eq_->kind() == "Modulo") {
      step_ = std::stoull(j["modulus"].get<std::string>());
      base_ = origin_ % *step_;
    } else if (eq_->kind() == "Full") {
      step_ = 1;
      base_ = 0;
    }
  }
  std::string kind() const override { return "NormalFromSet"; }
  Nat apply(Nat x, Fuel& fuel) const override { return power(x, 1, fuel); }
  Nat apply_inv(Nat x, Fuel& fuel) const override { return power(x, -1, fuel); }
  Nat power(Nat x, Int k, Fuel& fuel) const override {
    if (!eq_->related(origin_, x, fuel)) return x;
    Int i;
    if (__builtin_add_overflow(delta_inv(index_of(x, fuel)), k, &i)) throw OverflowError("power overflow");
    return element(delta(i), x, fuel);
  }
  Json to_json() const override {
    return {{"kind", kind()}, {"eq", eq_->to_json()}, {"origin", nat_json(origin_)}};
  }
  EqExpr known_partition() const override { return eq_support_of(eq_, origin_); }

 private:
  Nat index_of(Nat x, Fuel& fuel) const {
    if (step_) return (x - base_) / *step_;
    return eq_->members_upto(x, fuel).size() - 1;
  }

  // a(n), walking from the known member x.
  Nat element(Nat n, Nat x, Fuel& fuel) const {
    if (step_) return checked_add(base_, checked_mul(n, *step_));
    auto below = eq_->members_upto(x, fuel);
    if (n < below.size()) return below[n];
    Nat cur = x;
    for (Nat i = below.size() - 1; i < n; ++i) {
      auto nx = eq_->next_member(cur, std::nullopt, fuel);
      if (!nx) throw PreconditionViolation("set passed to build_cycle_from_set is finite");
      cur = *nx;
    }
    return cur;
  }

  EqExpr eq_;
  Nat origin_;
  std::optional<Nat> step_;
  Nat base_ = 0;
};

class FromRhoPerm final : public PermNode {
 public:
  FromRhoPerm(EqExpr eq, RhoExpr rho) : eq_(std::move(eq)), rho_(std::move(rho)) {}
  std::string kind() const override { return "FromRho"; }
  Nat apply(Nat x, Fuel& fuel) const override { return table_forward(eq_->members_upto(x, fuel), next(fuel)); }
  Nat apply_inv(Nat x, Fuel& fuel) const override {
    return table_backward(eq_->members_upto(x, fuel), next(fuel));
  }
  Json to_json() const override { return {{"kind", kind()}, {"eq", eq_->to_json()}, {"rho", rho_->to_json()}}; }
  EqExpr known_partition() const override { return eq_; }

 private:
  Next next(Fuel& fuel) const {
    return [this, &fuel](Nat y) -> std::optional<Nat> {
      if (!rho_->eval(y, fuel)) return std::nullopt;
      return eq_->next_member(y, std::nullopt, fuel);
    };
  }
  EqExpr eq_;
  RhoExpr rho_;
};

class CoproductPerm final : public PermNode {
 public:
  CoproductPerm(FamilyExpr fam, RhoExpr rho) : fam_(std::move(fam)), rho_(std::move(rho)) {}
  std::string kind() const override { return "CoproductPerm"; }
  Nat apply(Nat w, Fuel& fuel) const override { return step(w, true, fuel); }
  Nat apply_inv(Nat w, Fuel& fuel) const override { return step(w, false, fuel); }
  Json to_json() const override {
    return {{"kind", kind()}, {"family", fam_->to_json()}, {"rho", rho_->to_json()}};
  }
  EqExpr known_partition() const override { return coproduct(fam_); }

 private:
  Nat step(Nat w, bool forward, Fuel& fuel) const {
    auto [z, x] = unpair(w);
    EqExpr member = fam_->member(z);
    Next next = [&](Nat y) -> std::optional<Nat> {
      if (!rho_->eval(pair(z, y), fuel)) return std::nullopt;
      return member->next_member(y, std::nullopt, fuel);
    };
    auto xs = member->members_upto(x, fuel);
    return pair(z, forward ? table_forward(xs, next) : table_backward(xs, next));
  }
  FamilyExpr fam_;
  RhoExpr rho_;
};

class SeminormalFromRhoPerm final : public PermNode {
 public:
  SeminormalFromRhoPerm(EqExpr eq, RhoExpr rho) : eq_(std::move(eq)), rho_(std::move(rho)) {}
  std::string kind() const override { return "SeminormalFromRho"; }
  Nat apply(Nat x, Fuel& fuel) const override { return step(x, true, fuel); }
  Nat apply_inv(Nat x, Fuel& fuel) const override { return step(x, false, fuel); }
  Json to_json() const override { return {{"kind", kind()}, {"eq", eq_->to_json()}, {"rho", rho_->to_json()}}; }
  EqExpr known_partition() const override { return eq_; }

 private:
  Nat step(Nat x, bool forward, Fuel& fuel) const {
    Nat n = rho_->eval(x, fuel);
    auto xs = eq_->members_upto(x, fuel);
    if (n == 0) {
      Next next = [&](Nat y) { return eq_->next_member(y, std::nullopt, fuel); };
      return forward ? table_forward(xs, next) : table_backward(xs, next);
    }
    Nat k = xs.size() - 1;
    if (forward) {
      if (k + 1 < n) return *eq_->next_member(x, std::nullopt, fuel);
      return xs[0];
    }
    if (k > 0) return xs[k - 1];
    Nat cur = x;
    for (Nat i = 1; i < n; ++i) cur = *eq_->next_member(cur, std::nullopt, fuel);
    return cur;
  }
  EqExpr eq_;
  RhoExpr rho_;
};

class NormalizedPerm final : public PermNode {
 public:
  NormalizedPerm(PermExpr base, CycleWitness w) : base_(std::move(base)), w_(std::move(w)) {
    part_ = w_.partition() ? w_.partition() : base_->known_partition();
  }
  std::string kind() const override { return "Normalized"; }
  Nat apply(Nat x, Fuel& fuel) const override { return table_forward(members(x, fuel), next(fuel)); }
  Nat apply_inv(Nat x, Fuel& fuel) const override { return table_backward(members(x, fuel), next(fuel)); }
  Json to_json() const override {
    return {{"kind", kind()}, {"base", base_->to_json()}, {"witness", w_.to_json()}};
  }
  EqExpr known_partition() const override { return part_ ? part_ : eq_cycles(base_, w_); }

 private:
  std::vector<Nat> members(Nat x, Fuel& fuel) const {
    return part_ ? part_->members_upto(x, fuel) : cycle_members_upto(w_, x, fuel);
  }

  // A cycle member above y exists iff the members up to y are not closed
  // under f; the escape point then bounds the search. Infinite cycles
  // usually escape from their largest members, so those are tried first.
  Next next(Fuel& fuel) const {
    return [this, &fuel](Nat y) -> std::optional<Nat> {
      auto below = members(y, fuel);
      std::unordered_set<Nat> in(below.begin(), below.end());
      std::optional<Nat> escape;
      for (auto it = below.rbegin(); it != below.rend() && !escape; ++it) {
        Nat v = base_->apply(*it, fuel);
        if (!in.count(v)) escape = v;
      }
      if (!escape) return std::nullopt;
      if (part_) {
        if (auto c = part_->next_member(y, *escape, fuel)) return c;
      } else {
        for (Nat c = y + 1; c <= *escape; ++c)
          if (w_.related(y, c, fuel)) return c;
      }
      throw PreconditionViolation("witness disagrees with the permutation's cycles");
    };
  }
  PermExpr base_;
  CycleWitness w_;
  EqExpr part_;
};

Nat descend(const PermExpr& f, Nat x, Fuel& fuel) {
  Nat fx = f->apply(x, fuel), bx = f->apply_inv(x, fuel);
  if (x <= std::min(fx, bx)) return x;
  bool back = bx < x;
  Nat cur = back ? bx : fx;
  for (;;) {
    fuel.consume();
    Nat nx = back ? f->apply_inv(cur, fuel) : f->apply(cur, fuel);
    if (nx >= cur) return cur;
    cur = nx;
  }
}

bool seminormal_finite(const PermExpr& f, Nat x, Fuel& fuel) {
  Nat fx = f->apply(x, fuel);
  if (fx == x || f->apply(fx, fuel) == x) return true;
  Nat x0 = descend(f, x, fuel);
  return !(f->apply_inv(x0, fuel) < f->apply(x0, fuel));
}

class SeminormalToNormalPerm final : public PermNode {
 public:
  explicit SeminormalToNormalPerm(PermExpr base) : base_(std::move(base)) {}
  std::string kind() const override { return "SeminormalToNormal"; }
  Nat apply(Nat x, Fuel& fuel) const override { return step(x, true, fuel); }
  Nat apply_inv(Nat x, Fuel& fuel) const override { return step(x, false, fuel); }
  Json to_json() const override { return {{"kind", kind()}, {"base", base_->to_json()}}; }
  EqExpr known_partition() const override { return base_->known_partition(); }

 private:
  Nat step(Nat x, bool forward, Fuel& fuel) const {
    if (!seminormal_finite(base_, x, fuel)) return forward ? base_->apply(x, fuel) : base_->apply_inv(x, fuel);
    // A finite semi-normal cycle lists its members in increasing order from
    // the minimum, so following f from x0 enumerates the block sorted.
    Nat x0 = descend(base_, x, fuel);
    std::vector<Nat> sorted{x0};
    for (Nat v = base_->apply(x0, fuel); v != x0; v = base_->apply(v, fuel)) {
      fuel.consume();
      sorted.push_back(v);
    }
    auto pos = std::find(sorted.begin(), sorted.end(), x);
    std::vector<Nat> xs(sorted.begin(), pos + 1);
    Next next = [&](Nat y) -> std::optional<Nat> {
      auto it = std::upper_bound(sorted.begin(), sorted.end(), y);
      if (it == sorted.end()) return std::nullopt;
      return *it;
    };
    return forward ? table_forward(xs, next) : table_backward(xs, next);
  }
  PermExpr base_;
};

}  // namespace

RhoExpr rho_constant(RhoKind kind, Nat value) { return std::make_shared<ConstantRho>(kind, value); }
RhoExpr rho_table(RhoKind kind, std::map<Nat, Nat> table, Nat fallback) {
  return std::make_shared<TableRho>(kind, std::move(table), fallback);
}
RhoExpr rho_for_constant_cardinality(Nat c) { return rho_constant(RhoKind::Cardinality, c); }
RhoExpr rho_for_finitely_many_blocks(EqExpr eq, std::vector<BlockCardinality> blocks) {
  return std::make_shared<FiniteBlocksRho>(std::move(eq), std::move(blocks));
}
RhoExpr rho_from_perm(PermExpr f, const CycleWitness& w) {
  CycleWitness d = w.kind() == WitnessKind::Decider ? w : witness_convert(w, WitnessKind::Decider);
  return std::make_shared<FromPermRho>(std::move(f), std::move(d));
}

PermExpr build_cycle_from_set(const BlockDecider& member) {
  return std::make_shared<NormalFromSetPerm>(member.eq, member.origin);
}

UnionCheck finite_union_check(const PermExpr& f, const std::vector<Nat>& a, Fuel& fuel) {
  std::unordered_set<Nat> in(a.begin(), a.end());
  for (Nat x : a) {
    Nat v = f->apply(x, fuel);
    if (!in.count(v)) return {false, v};
  }
  return {true, std::nullopt};
}

PermExpr normalize(PermExpr f, const CycleWitness& w) {
  CycleWitness d = w.kind() == WitnessKind::Decider ? w : witness_convert(w, WitnessKind::Decider);
  return std::make_shared<NormalizedPerm>(std::move(f), std::move(d));
}

NormalMin normal_min_counted(const PermExpr& f, Nat x) {
  Fuel fuel = Fuel::unbounded();
  Nat queries = 0;
  auto q = [&](Nat from, Int k) {
    ++queries;
    return f->power(from, k, fuel);
  };
  Nat xp = q(x, 1), xm = q(x, -1);
  if (x <= std::min(xp, xm)) return {x, queries};

  // Along the ray towards the smaller neighbour, s_t < x holds exactly for
  // t = 1..T, where T is the delta index of x; the minimum sits at ceil(T/2).
  Int dir = xp < xm ? 1 : -1;
  auto below = [&](Int t) { return q(x, dir * t) < x; };
  Int lo = 1, hi = 2;
  bool fallback = false;
  while (below(hi)) {
    if (static_cast<Nat>(hi) > x) {
      fallback = true;
      break;
    }
    lo = hi;
    if (__builtin_mul_overflow(hi, 2, &hi)) {
      fallback = true;
      break;
    }
  }
  if (!fallback) {
    while (hi - lo > 1) {
      Int mid = lo + (hi - lo) / 2;
      if (below(mid)) lo = mid; else hi = mid;
    }
    Nat c = q(x, dir * ((lo + 1) / 2));
    if (c <= std::min(q(c, 1), q(c, -1))) return {c, queries};
  }

  // Finite cycles can wrap around; walk the whole cycle instead.
  Nat best = x;
  Nat v = f->apply(x, fuel);
  for (Nat steps = 0; v != x; ++steps) {
    if (steps > kDefaultFuel) throw PreconditionViolation("normal_min subject is not in normal form");
    best = std::min(best, v);
    v = f->apply(v, fuel);
    ++queries;
  }
  return {best, queries};
}

Nat normal_min(const PermExpr& f, Nat x) { return normal_min_counted(f, x).value; }

CycleWitness decider_from_normal(PermExpr f) {
  return CycleWitness::mapping(
      WitnessKind::MinRep, f, [f](Nat x, Fuel&) { return normal_min(f, x); }, Json{{"kind", "FromNormal"}});
}

CfDecider seminormal_cf_decider(PermExpr f) {
  return [f](Nat x, Fuel& fuel) { return seminormal_finite(f, x, fuel); };
}

PermExpr seminormal_to_normal(PermExpr f) { return std::make_shared<SeminormalToNormalPerm>(std::move(f)); }

PermExpr perm_from_rho(EqExpr eq, RhoExpr rho) {
  require_rho(rho, RhoKind::GreaterElement);
  return std::make_shared<FromRhoPerm>(std::move(eq), std::move(rho));
}

PermExpr coproduct_perm_from_rho(FamilyExpr family, RhoExpr rho) {
  require_rho(rho, RhoKind::CoproductGreaterElement);
  return std::make_shared<CoproductPerm>(std::move(family), std::move(rho));
}

PermExpr seminormal_from_rho(EqExpr eq, RhoExpr rho) {
  require_rho(rho, RhoKind::Cardinality);
  return std::make_shared<SeminormalFromRhoPerm>(std::move(eq), std::move(rho));
}

// ----------------------------------------------------------------- report

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Normal: return "normal";
    case Verdict::SeminormalFinite: return "seminormal-finite";
    case Verdict::Violation: return "violation";
  }
  return "?";
}

bool NormalityReport::normal() const {
  return std::all_of(cycles.begin(), cycles.end(), [](const CycleVerdict& c) { return c.verdict == Verdict::Normal; });
}

bool NormalityReport::seminormal() const {
  return std::none_of(cycles.begin(), cycles.end(),
                      [](const CycleVerdict& c) { return c.verdict == Verdict::Violation; });
}

Json NormalityReport::to_json() const {
  Json cs = Json::array();
  for (const auto& c : cycles) {
    Json j = {{"minimum", nat_json(c.minimum)}, {"verdict", to_string(c.verdict)}};
    if (c.length) j["length"] = nat_json(*c.length);
    if (c.verdict == Verdict::Violation) {
      j["k"] = int_json(c.k);
      j["value"] = nat_json(c.value);
      j["previous"] = nat_json(c.previous);
    }
    cs.push_back(j);
  }
  return {{"window", nat_json(window)}, {"normal", normal()}, {"seminormal", seminormal()}, {"cycles", cs}};
}

namespace {

std::optional<CycleVerdict> inspect(const PermExpr& f, Nat x0, Nat window) {
  Fuel fuel = Fuel::unbounded();
  if (x0 > std::min(f->apply(x0, fuel), f->apply_inv(x0, fuel))) return std::nullopt;
  const Nat cap = 4 * window + 64;
  CycleVerdict out;
  out.minimum = x0;
  std::unordered_set<Nat> seen{x0};
  Nat prev = x0, fwd = x0, bwd = x0;
  bool fwd_past = false, bwd_past = false;
  bool violated = false;
  for (Nat j = 1; j <= cap; ++j) {
    Int k = delta_inv(j);
    Nat v = k < 0 ? (bwd = f->apply_inv(bwd, fuel)) : (fwd = f->apply(fwd, fuel));
    if (seen.count(v)) {
      out.length = seen.size();
      return out;
    }
    if (v < x0) return std::nullopt;  // x0 is only a local minimum; the cycle is reported from below
    if (v <= prev) {
      out.k = k;
      out.value = v;
      out.previous = prev;
      violated = true;
      break;
    }
    seen.insert(v);
    prev = v;
    if (v >= window) (k < 0 ? bwd_past : fwd_past) = true;
    if (fwd_past && bwd_past) return out;
  }
  if (!violated) return out;

  Nat last = x0;
  for (Nat v = f->apply(x0, fuel), steps = 1; steps <= cap; v = f->apply(v, fuel), ++steps) {
    if (v == x0) {
      out.verdict = Verdict::SeminormalFinite;
      out.length = steps;
      return out;
    }
    if (v <= last) break;
    last = v;
  }
  out.verdict = Verdict::Violation;
  return out;
}

NormalityReport assemble(Nat window, std::vector<std::optional<CycleVerdict>>& rows) {
  NormalityReport r;
  r.window = window;
  for (auto& row : rows)
    if (row) r.cycles.push_back(*row);
  return r;
}

}  // namespace

NormalityReport normality_report(const PermExpr& f, Nat window) {
  std::vector<std::optional<CycleVerdict>> rows(window);
  window::for_each(window, [&](Nat x) { rows[x] = inspect(f, x, window); });
  return assemble(window, rows);
}

NormalityReport normality_report_serial(const PermExpr& f, Nat window) {
  std::vector<std::optional<CycleVerdict>> rows(window);
  window::for_each_serial(window, [&](Nat x) { rows[x] = inspect(f, x, window); });
  return assemble(window, rows);
}

}  // namespace permcyc
