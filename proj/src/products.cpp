#include "permcyc/products.hpp"

#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "permcyc/cycles.hpp"
#include "permcyc/permutation.hpp"

namespace permcyc {

namespace {

class TranspositionTimesPerm final : public PermNode {
 public:
  TranspositionTimesPerm(Nat x, Nat y, PermExpr f) : x_(x), y_(y), f_(std::move(f)) {}
  std::string kind() const override { return "TranspositionTimes"; }
  Nat apply(Nat z, Fuel& fuel) const override { return swap(f_->apply(z, fuel)); }
  Nat apply_inv(Nat z, Fuel& fuel) const override { return f_->apply_inv(swap(z), fuel); }
  Json to_json() const override {
    return {{"kind", kind()}, {"x", nat_json(x_)}, {"y", nat_json(y_)}, {"base", f_->to_json()}};
  }

 private:
  Nat swap(Nat z) const { return z == x_ ? y_ : z == y_ ? x_ : z; }
  Nat x_, y_;
  PermExpr f_;
};

Int exponent(const PermExpr& f, Nat from, Nat to) {
  Fuel fuel = Fuel::unbounded();
  return *reachability_semidecider(f, from, to, fuel).value;
}

// Where a point of f ends up in (x y) . f.
enum class Part { Other, Segment, Rest, Fused, RayA, RayB };

class ProductState {
 public:
  ProductState(Nat x, Nat y, PermExpr f, CycleWitness w, CfDecider cf)
      : x_(x), y_(y), f_(std::move(f)), w_(std::move(w)), cf_(std::move(cf)) {
    Fuel fuel(kDefaultFuel);
    case_ = classify_product(x_, y_, w_, cf_, fuel);
    if (case_ == ProductCase::Split) {
      // The piece base, f(base), ..., f^(len-1)(base) closes into its own cycle.
      Int k = exponent(f_, x_, y_);
      base_ = k > 0 ? x_ : y_;
      len_ = static_cast<Nat>(k > 0 ? k : -k);
      finite_ = cf_(x_, fuel);
      if (finite_) {
        Nat v = base_;
        for (Nat j = 0; j < len_; ++j, v = f_->apply(v, fuel)) segment_.insert(v);
      }
    } else if (case_ == ProductCase::Fuse) {
      finite_ = cf_(x_, fuel) && cf_(y_, fuel);
    }
  }

  ProductCase product_case() const { return case_; }

  bool related(Nat u, Nat v, Fuel& fuel) const {
    if (u == v) return true;
    Part pu = part(u, fuel), pv = part(v, fuel);
    if (pu == Part::Other && pv == Part::Other) return w_.related(u, v, fuel);
    return pu == pv;
  }

  bool finite(Nat u, Fuel& fuel) const {
    switch (part(u, fuel)) {
      case Part::Other: return cf_(u, fuel);
      case Part::Segment: return true;
      case Part::Rest:
      case Part::Fused: return finite_;
      case Part::RayA:
      case Part::RayB: return false;
    }
    return false;
  }

 private:
  Part part(Nat u, Fuel& fuel) const {
    if (case_ == ProductCase::Trivial) return Part::Other;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(u);
      if (it != memo_.end()) return it->second;
    }
    Part p = compute_part(u, fuel);
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(u, p);
    return p;
  }

  Part compute_part(Nat u, Fuel& fuel) const {
    switch (case_) {
      case ProductCase::Trivial:
        return Part::Other;
      case ProductCase::Split: {
        if (!w_.related(u, x_, fuel)) return Part::Other;
        if (finite_) return segment_.count(u) ? Part::Segment : Part::Rest;
        Int k = exponent(f_, base_, u);
        return k >= 0 && static_cast<Nat>(k) < len_ ? Part::Segment : Part::Rest;
      }
      case ProductCase::Fuse:
        return w_.related(u, x_, fuel) || w_.related(u, y_, fuel) ? Part::Fused : Part::Other;
      case ProductCase::Rays:
        // The negative ray of x continues into the non-negative ray of y, and
        // the negative ray of y into the non-negative ray of x.
        if (w_.related(u, x_, fuel)) return exponent(f_, x_, u) < 0 ? Part::RayA : Part::RayB;
        if (w_.related(u, y_, fuel)) return exponent(f_, y_, u) >= 0 ? Part::RayA : Part::RayB;
        return Part::Other;
    }
    return Part::Other;
  }

  Nat x_, y_;
  PermExpr f_;
  CycleWitness w_;
  CfDecider cf_;
  ProductCase case_ = ProductCase::Trivial;
  Nat base_ = 0, len_ = 0;
  bool finite_ = false;
  std::unordered_set<Nat> segment_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Nat, Part> memo_;
};

}  // namespace

std::string to_string(ProductCase c) {
  switch (c) {
    case ProductCase::Trivial: return "trivial";
    case ProductCase::Split: return "split";
    case ProductCase::Fuse: return "fuse";
    case ProductCase::Rays: return "rays";
  }
  return "?";
}

ProductCase classify_product(Nat x, Nat y, const CycleWitness& w, const CfDecider& cf, Fuel& fuel) {
  if (x == y) return ProductCase::Trivial;
  if (w.related(x, y, fuel)) return ProductCase::Split;
  if (cf(x, fuel) || cf(y, fuel)) return ProductCase::Fuse;
  return ProductCase::Rays;
}

PermExpr transposition_times_perm(Nat x, Nat y, PermExpr f) {
  return std::make_shared<TranspositionTimesPerm>(x, y, std::move(f));
}

ProductWitness transposition_times_cf(Nat x, Nat y, PermExpr f, const CycleWitness& w, CfDecider cf) {
  CycleWitness d = w.kind() == WitnessKind::Decider ? w : witness_convert(w, WitnessKind::Decider);
  PermExpr p = transposition_times_perm(x, y, f);
  auto state = std::make_shared<const ProductState>(x, y, f, d, std::move(cf));
  return {p,
          CycleWitness::decider(p, [state](Nat u, Nat v, Fuel& fuel) { return state->related(u, v, fuel); }),
          [state](Nat u, Fuel& fuel) { return state->finite(u, fuel); }};
}

CycleWitness transposition_times(Nat x, Nat y, PermExpr f, const CycleWitness& w, CfDecider cf) {
  return transposition_times_cf(x, y, std::move(f), w, std::move(cf)).decider;
}

ProductWitness finitary_product(Nat a_code, PermExpr f, Nat b_code, const CycleWitness& w, CfDecider cf) {
  auto as = eta_decode_list(a_code);
  auto bs = eta_decode_list(b_code);
  CycleWitness d = w.kind() == WitnessKind::Decider ? w : witness_convert(w, WitnessKind::Decider);
  ProductWitness cur{f, d, std::move(cf)};
  // a . f = t1 . (t2 . ... (tn . f)).
  for (auto it = as.rbegin(); it != as.rend(); ++it)
    cur = transposition_times_cf(it->first, it->second, cur.perm, cur.decider, cur.cf);
  // (a f b)^-1 = wm . ... . w1 . (a f)^-1 has the same cycles as a f b.
  cur.perm = perm_inverse(cur.perm);
  for (const auto& t : bs) cur = transposition_times_cf(t.first, t.second, cur.perm, cur.decider, cur.cf);

  PermExpr afb = perm_compose(eta_decode(a_code), perm_compose(std::move(f), eta_decode(b_code)));
  CycleWitness last = cur.decider;
  return {afb,
          CycleWitness::decider(afb, [last](Nat u, Nat v, Fuel& fuel) { return last.related(u, v, fuel); }),
          cur.cf};
}

CfDecider cf_from_product_deciders(PermExpr, const CycleWitness& w, UniformProductDeciders uniform,
                                   std::optional<Nat> y0) {
  return [w, uniform = std::move(uniform), y0](Nat x, Fuel& fuel) {
    if (!y0) return true;
    if (w.related(x, *y0, fuel)) return false;
    return uniform(x, *y0).related(x, *y0, fuel);
  };
}

}  // namespace permcyc
