#include "permcyc/cycles.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <unordered_map>

namespace permcyc {

namespace {

Json convert_recipe(const CycleWitness& w) {
  if (!w.serializable()) return nullptr;
  return {{"kind", "Convert"}, {"source", w.to_json()}};
}

CycleWitness decider_to_minrep(const CycleWitness& w) {
  return CycleWitness::mapping(
      WitnessKind::MinRep, w.subject(),
      [w](Nat x, Fuel& fuel) {
        for (Nat y = 0; y < x; ++y)
          if (w.related(x, y, fuel)) return y;
        return x;
      },
      convert_recipe(w));
}

CycleWitness relabel(const CycleWitness& w, WitnessKind target) {
  return CycleWitness::mapping(
      target, w.subject(), [w](Nat x, Fuel& fuel) { return w.value(x, fuel); }, convert_recipe(w));
}

CycleWitness charvalue_to_minrep(const CycleWitness& w) {
  return CycleWitness::mapping(
      WitnessKind::MinRep, w.subject(),
      [w](Nat x, Fuel& fuel) {
        Nat cx = w.value(x, fuel);
        for (Nat y = 0; y < x; ++y)
          if (w.value(y, fuel) == cx) return y;
        return x;
      },
      convert_recipe(w));
}

CycleWitness values_to_decider(const CycleWitness& w) {
  return CycleWitness::decider(
      w.subject(), [w](Nat x, Nat y, Fuel& fuel) { return w.value(x, fuel) == w.value(y, fuel); },
      convert_recipe(w));
}

// Dovetails over n = <e, i>, testing f^k(rho(e)) = x with k = delta^-1(i).
class TransversalLocator {
 public:
  explicit TransversalLocator(CycleWitness rho) : rho_(std::move(rho)) {}

  Nat locate(Nat x, Fuel& fuel) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(x);
      if (it != memo_.end()) {
        fuel.consume(it->second.probes);
        return it->second.rep;
      }
    }
    const PermExpr& f = rho_.subject();
    Fuel inner = Fuel::unbounded();
    Nat probes = 0;
    for (Nat n = 0;; ++n) {
      fuel.consume();
      ++probes;
      auto [e, i] = unpair(n);
      Nat r = rep(e, inner);
      if (orbit_point(f, r, delta_inv(i), inner) == x) {
        std::lock_guard<std::mutex> lock(mu_);
        memo_.emplace(x, Hit{r, probes});
        return r;
      }
    }
  }

 private:
  struct Hit {
    Nat rep;
    Nat probes;
  };

  Nat rep(Nat e, Fuel& inner) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = reps_.find(e);
      if (it != reps_.end()) return it->second;
    }
    Nat r = rho_.value(e, inner);
    std::lock_guard<std::mutex> lock(mu_);
    reps_.emplace(e, r);
    return r;
  }

  // f^k(r), extending the cached walks from r as needed.
  Nat orbit_point(const PermExpr& f, Nat r, Int k, Fuel& inner) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto& walk = walks_[r];
    auto& side = k < 0 ? walk.bwd : walk.fwd;
    Nat steps = k < 0 ? static_cast<Nat>(-(k + 1)) + 1 : static_cast<Nat>(k);
    if (steps == 0) return r;
    if (side.empty()) side.push_back(r);
    while (side.size() <= steps) side.push_back(k < 0 ? f->apply_inv(side.back(), inner) : f->apply(side.back(), inner));
    return side[steps];
  }

  struct Walk {
    std::vector<Nat> fwd, bwd;
  };

  CycleWitness rho_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Nat, Hit> memo_;
  mutable std::unordered_map<Nat, Nat> reps_;
  mutable std::unordered_map<Nat, Walk> walks_;
};

CycleWitness transversal_to_decider(const CycleWitness& w) {
  auto loc = std::make_shared<TransversalLocator>(w);
  return CycleWitness::decider(
      w.subject(),
      [loc](Nat x, Nat y, Fuel& fuel) { return x == y || loc->locate(x, fuel) == loc->locate(y, fuel); },
      convert_recipe(w));
}

CycleWitness convert_step(const CycleWitness& w, WitnessKind to) {
  using K = WitnessKind;
  switch (w.kind()) {
    case K::Decider:
      return decider_to_minrep(w);
    case K::MinRep:
      if (to == K::Decider) return values_to_decider(w);
      return relabel(w, to);  // Transversal or UniqueRep; both are mu itself
    case K::UniqueRep:
      if (to == K::Decider) return values_to_decider(w);
      return relabel(w, K::CharValue);
    case K::CharValue:
      if (to == K::Decider) return values_to_decider(w);
      return charvalue_to_minrep(w);
    case K::Transversal:
      return transversal_to_decider(w);
  }
  throw std::logic_error("unreachable witness kind");
}

const std::map<WitnessKind, std::vector<WitnessKind>>& edges() {
  using K = WitnessKind;
  static const std::map<K, std::vector<K>> e = {
      {K::Decider, {K::MinRep}},
      {K::MinRep, {K::Decider, K::Transversal, K::UniqueRep}},
      {K::UniqueRep, {K::Decider, K::CharValue}},
      {K::CharValue, {K::Decider, K::MinRep}},
      {K::Transversal, {K::Decider}},
  };
  return e;
}

std::vector<WitnessKind> route(WitnessKind from, WitnessKind to) {
  std::map<WitnessKind, WitnessKind> parent;
  std::deque<WitnessKind> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    WitnessKind k = queue.front();
    queue.pop_front();
    if (k == to) break;
    for (WitnessKind n : edges().at(k)) {
      if (parent.count(n)) continue;
      parent[n] = k;
      queue.push_back(n);
    }
  }
  std::vector<WitnessKind> path;
  for (WitnessKind k = to; k != from; k = parent.at(k)) path.push_back(k);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

CycleWitness witness_convert(const CycleWitness& w, WitnessKind target) {
  CycleWitness cur = w;
  for (WitnessKind k : route(w.kind(), target)) cur = convert_step(cur, k);
  return cur;
}

CycleWitness intrinsic_witness(const PermExpr& f) {
  EqExpr part = f->known_partition();
  if (!part) throw PreconditionViolation(f->kind() + " has no intrinsic cycle partition");
  return CycleWitness::decider(
      f, [part](Nat x, Nat y, Fuel& fuel) { return part->related(x, y, fuel); },
      Json{{"kind", "Intrinsic"}});
}

CycleWitness witness_from_eq(const PermExpr& f, const EqExpr& eq) {
  return CycleWitness::from_partition(f, eq, Json{{"kind", "FromEq"}, {"eq", eq->to_json()}});
}

SearchOutcome<Int> xi_power_search(const PermExpr& f, Nat x, const std::function<bool(Int, Nat)>& pred,
                                   Fuel& fuel) {
  Nat fwd = x, bwd = x;
  for (Nat i = 0;; ++i) {
    if (!fuel.try_consume()) return SearchOutcome<Int>::Exhausted(i);
    Int k = delta_inv(i);
    Nat v;
    if (k < 0) {
      bwd = f->apply_inv(bwd, fuel);
      v = bwd;
    } else {
      if (k > 0) fwd = f->apply(fwd, fuel);
      v = fwd;
    }
    if (pred(k, v)) return SearchOutcome<Int>::Found(k, i + 1);
  }
}

SearchOutcome<Int> reachability_semidecider(const PermExpr& f, Nat x, Nat y, Fuel& fuel) {
  return xi_power_search(f, x, [y](Int, Nat v) { return v == y; }, fuel);
}

CycleWitness decider_one_infinite(const PermExpr& f, Nat safety) {
  return CycleWitness::decider(
      f,
      [f, safety](Nat x, Nat y, Fuel& fuel) {
        if (x == y) return true;
        Nat a = x, b = y;
        for (Nat i = 1; i <= safety; ++i) {
          a = f->apply(a, fuel);
          b = f->apply(b, fuel);
          if (a == y || b == x) return true;
          if (a == x || b == y) return false;
        }
        throw PreconditionViolation("one-infinite-cycle decider ran out of safety fuel");
      },
      Json{{"kind", "OneInfinite"}, {"safety", nat_json(safety)}});
}

CycleWitness decider_few_infinite(const PermExpr& f, std::vector<Nat> reps, Nat safety) {
  Json rj = Json::array();
  for (Nat r : reps) rj.push_back(nat_json(r));
  enum class Landing { Other, Rep, Closed };
  struct Land {
    Landing how;
    Nat at;
  };
  auto land = [f, reps, safety](Nat x, Nat other) -> Land {
    Fuel budget(safety);
    Land out{Landing::Closed, x};
    auto hit = xi_power_search(
        f, x,
        [&](Int k, Nat v) {
          if (v == other) out = {Landing::Other, v};
          else if (std::find(reps.begin(), reps.end(), v) != reps.end()) out = {Landing::Rep, v};
          else if (k != 0 && v == x) out = {Landing::Closed, v};
          else return false;
          return true;
        },
        budget);
    if (!hit.found()) throw PreconditionViolation("few-infinite-cycles decider ran out of safety fuel");
    return out;
  };
  return CycleWitness::decider(
      f,
      [land](Nat x, Nat y, Fuel&) {
        if (x == y) return true;
        Land lx = land(x, y);
        if (lx.how != Landing::Rep) return lx.how == Landing::Other;
        Land ly = land(y, x);
        if (ly.how != Landing::Rep) return ly.how == Landing::Other;
        return lx.at == ly.at;
      },
      Json{{"kind", "FewInfinite"}, {"reps", rj}, {"safety", nat_json(safety)}});
}

}  // namespace permcyc
