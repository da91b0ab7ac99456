#include "permcyc/permutation.hpp"

#include <algorithm>
#include <map>

#include "permcyc/equivalence.hpp"
#include "permcyc/window.hpp"

namespace permcyc {

namespace {

class IdentityPerm final : public PermNode {
 public:
  std::string kind() const override { return "Identity"; }
  Nat apply(Nat x, Fuel&) const override { return x; }
  Nat apply_inv(Nat x, Fuel&) const override { return x; }
  Nat power(Nat x, Int, Fuel&) const override { return x; }
  Json to_json() const override { return {{"kind", kind()}}; }
  EqExpr known_partition() const override { return eq_singletons(); }
};

Json transp_json(const Transp& t) { return Json::array({nat_json(t.first), nat_json(t.second)}); }

class TranspositionPerm final : public PermNode {
 public:
  TranspositionPerm(Nat x, Nat y) : x_(x), y_(y) {}
  std::string kind() const override { return "Transposition"; }
  Nat apply(Nat z, Fuel&) const override { return z == x_ ? y_ : z == y_ ? x_ : z; }
  Nat apply_inv(Nat z, Fuel& f) const override { return apply(z, f); }
  Nat power(Nat z, Int k, Fuel& f) const override { return k % 2 == 0 ? z : apply(z, f); }
  Json to_json() const override { return {{"kind", kind()}, {"x", nat_json(x_)}, {"y", nat_json(y_)}}; }
  EqExpr known_partition() const override {
    if (x_ == y_) return eq_singletons();
    return eq_fibers(fun_table({{std::max(x_, y_), std::min(x_, y_)}}));
  }

 private:
  Nat x_, y_;
};

class FinitaryPerm final : public PermNode {
 public:
  explicit FinitaryPerm(std::vector<Transp> ts) : ts_(std::move(ts)) {
    std::vector<Nat> support;
    for (auto [a, b] : ts_) {
      support.push_back(a);
      support.push_back(b);
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    for (Nat s : support) {
      Nat v = s;
      for (auto it = ts_.rbegin(); it != ts_.rend(); ++it) {
        if (v == it->first) v = it->second;
        else if (v == it->second) v = it->first;
      }
      if (v != s) {
        fwd_[s] = v;
        inv_[v] = s;
      }
    }
    for (auto [s, _] : fwd_) {
      if (where_.count(s)) continue;
      std::vector<Nat> cyc{s};
      for (Nat v = fwd_.at(s); v != s; v = fwd_.at(v)) cyc.push_back(v);
      for (std::size_t i = 0; i < cyc.size(); ++i) where_[cyc[i]] = {cycles_.size(), i};
      cycles_.push_back(std::move(cyc));
    }
  }

  std::string kind() const override { return "FinitaryProduct"; }
  Nat apply(Nat x, Fuel&) const override { return lookup(fwd_, x); }
  Nat apply_inv(Nat x, Fuel&) const override { return lookup(inv_, x); }
  Nat power(Nat x, Int k, Fuel&) const override {
    auto it = where_.find(x);
    if (it == where_.end()) return x;
    const auto& cyc = cycles_[it->second.first];
    Int n = static_cast<Int>(cyc.size());
    Int pos = (static_cast<Int>(it->second.second) + k % n + n) % n;
    return cyc[static_cast<std::size_t>(pos)];
  }
  Json to_json() const override {
    Json list = Json::array();
    for (const auto& t : ts_) list.push_back(transp_json(t));
    return {{"kind", kind()}, {"transpositions", list}};
  }
  EqExpr known_partition() const override {
    std::map<Nat, Nat> label;
    for (const auto& cyc : cycles_) {
      Nat m = *std::min_element(cyc.begin(), cyc.end());
      for (Nat v : cyc) label[v] = m;
    }
    return eq_fibers(fun_table(std::move(label)));
  }
  const std::vector<Transp>& transpositions() const { return ts_; }

 private:
  static Nat lookup(const std::map<Nat, Nat>& m, Nat x) {
    auto it = m.find(x);
    return it == m.end() ? x : it->second;
  }

  std::vector<Transp> ts_;
  std::map<Nat, Nat> fwd_, inv_;
  std::vector<std::vector<Nat>> cycles_;
  std::map<Nat, std::pair<std::size_t, std::size_t>> where_;
};

class DeltaSuccPerm final : public PermNode {
 public:
  std::string kind() const override { return "DeltaSucc"; }
  Nat apply(Nat x, Fuel& f) const override { return power(x, 1, f); }
  Nat apply_inv(Nat x, Fuel& f) const override { return power(x, -1, f); }
  Nat power(Nat x, Int k, Fuel&) const override {
    Int i = delta_inv(x);
    Int r;
    if (__builtin_add_overflow(i, k, &r)) throw OverflowError("DeltaSucc power overflow");
    return delta(r);
  }
  Json to_json() const override { return {{"kind", kind()}}; }
  EqExpr known_partition() const override { return eq_full(); }
};

Json rule_json(const PiecewiseRule& r) {
  Json j = {{"modulus", nat_json(r.modulus)}, {"residue", nat_json(r.residue)}};
  if (r.constant) {
    j["const"] = nat_json(r.value);
  } else {
    j["a"] = nat_json(r.a);
    j["b"] = int_json(r.b);
  }
  return j;
}

class PiecewisePerm final : public PermNode {
 public:
  PiecewisePerm(std::vector<PiecewiseRule> rules, Nat window) : rules_(std::move(rules)) {
    for (const auto& r : rules_) {
      if (r.constant && r.modulus != 0)
        throw PreconditionViolation("constant piecewise rules need modulus 0");
      if (!r.constant && r.a == 0) throw PreconditionViolation("affine rule needs a >= 1");
      if (r.modulus != 0 && r.residue >= r.modulus)
        throw PreconditionViolation("residue must be below the modulus");
    }
    auto ok = [this](Nat x) {
      Fuel f = Fuel::unbounded();
      return apply_inv(apply(x, f), f) == x && apply(apply_inv(x, f), f) == x;
    };
    if (!window::all_of(window, ok))
      throw PreconditionViolation("piecewise rules are not a bijection on the check window");
  }

  std::string kind() const override { return "PiecewiseResidue"; }

  Nat apply(Nat x, Fuel&) const override {
    for (const auto& r : rules_) {
      if (!r.matches(x)) continue;
      if (r.constant) return r.value;
      return affine(r, x);
    }
    return x;
  }

  Nat apply_inv(Nat z, Fuel&) const override {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      const auto& r = rules_[i];
      std::optional<Nat> cand;
      if (r.constant) {
        if (r.value == z) cand = r.residue;
      } else {
        __int128 d = static_cast<__int128>(z) - r.b;
        if (d >= 0 && d % r.a == 0 && d / r.a <= static_cast<__int128>(UINT64_MAX))
          cand = static_cast<Nat>(d / r.a);
      }
      if (cand && first_match(*cand) == i) return *cand;
    }
    if (first_match(z) == rules_.size()) return z;
    throw PreconditionViolation("piecewise map has no preimage for " + std::to_string(z));
  }

  Json to_json() const override {
    Json list = Json::array();
    for (const auto& r : rules_) list.push_back(rule_json(r));
    return {{"kind", kind()}, {"rules", list}};
  }

 private:
  std::size_t first_match(Nat x) const {
    for (std::size_t i = 0; i < rules_.size(); ++i)
      if (rules_[i].matches(x)) return i;
    return rules_.size();
  }

  static Nat affine(const PiecewiseRule& r, Nat x) {
    __int128 v = static_cast<__int128>(r.a) * x + r.b;
    if (v < 0) throw PreconditionViolation("piecewise rule leaves the naturals at " + std::to_string(x));
    if (v > static_cast<__int128>(UINT64_MAX)) throw OverflowError("piecewise rule overflow");
    return static_cast<Nat>(v);
  }

  std::vector<PiecewiseRule> rules_;
};

class ComposePerm final : public PermNode {
 public:
  ComposePerm(PermExpr outer, PermExpr inner) : outer_(std::move(outer)), inner_(std::move(inner)) {}
  std::string kind() const override { return "Compose"; }
  Nat apply(Nat x, Fuel& f) const override { return outer_->apply(inner_->apply(x, f), f); }
  Nat apply_inv(Nat x, Fuel& f) const override { return inner_->apply_inv(outer_->apply_inv(x, f), f); }
  Json to_json() const override {
    return {{"kind", kind()}, {"outer", outer_->to_json()}, {"inner", inner_->to_json()}};
  }

 private:
  PermExpr outer_, inner_;
};

class InversePerm final : public PermNode {
 public:
  explicit InversePerm(PermExpr base) : base_(std::move(base)) {}
  std::string kind() const override { return "Inverse"; }
  Nat apply(Nat x, Fuel& f) const override { return base_->apply_inv(x, f); }
  Nat apply_inv(Nat x, Fuel& f) const override { return base_->apply(x, f); }
  Nat power(Nat x, Int k, Fuel& f) const override {
    if (k == INT64_MIN) throw OverflowError("power exponent overflow");
    return base_->power(x, -k, f);
  }
  Json to_json() const override { return {{"kind", kind()}, {"base", base_->to_json()}}; }
  EqExpr known_partition() const override { return base_->known_partition(); }

 private:
  PermExpr base_;
};

}  // namespace

PiecewiseRule PiecewiseRule::affine(Nat modulus, Nat residue, Nat a, Int b) {
  PiecewiseRule r;
  r.modulus = modulus;
  r.residue = residue;
  r.a = a;
  r.b = b;
  return r;
}

PiecewiseRule PiecewiseRule::point(Nat x, Nat value) {
  PiecewiseRule r;
  r.modulus = 0;
  r.residue = x;
  r.constant = true;
  r.value = value;
  return r;
}

PermExpr perm_identity() { return std::make_shared<IdentityPerm>(); }
PermExpr perm_transposition(Nat x, Nat y) { return std::make_shared<TranspositionPerm>(x, y); }
PermExpr perm_finitary(std::vector<Transp> ts) { return std::make_shared<FinitaryPerm>(std::move(ts)); }
PermExpr perm_delta_succ() { return std::make_shared<DeltaSuccPerm>(); }
PermExpr perm_piecewise(std::vector<PiecewiseRule> rules, Nat check_window) {
  return std::make_shared<PiecewisePerm>(std::move(rules), check_window);
}
PermExpr perm_compose(PermExpr outer, PermExpr inner) {
  return std::make_shared<ComposePerm>(std::move(outer), std::move(inner));
}
PermExpr perm_inverse(PermExpr p) { return std::make_shared<InversePerm>(std::move(p)); }

PermExpr perm_g() {
  return perm_piecewise({PiecewiseRule::affine(2, 1, 1, 0), PiecewiseRule::point(2, 0),
                         PiecewiseRule::affine(4, 2, 1, -4), PiecewiseRule::affine(4, 0, 1, 4)});
}

PermExpr perm_parity_swap() {
  return perm_piecewise({PiecewiseRule::affine(2, 0, 1, 1), PiecewiseRule::affine(2, 1, 1, -1)});
}

Nat eta_encode(const std::vector<Transp>& ts) {
  if (ts.empty()) return pair(0, 0);
  Nat z = pair(ts.back().first, ts.back().second);
  for (auto it = ts.rbegin() + 1; it != ts.rend(); ++it) z = pair(pair(it->first, it->second), z);
  return pair(ts.size(), z);
}

std::vector<Transp> eta_decode_list(Nat z) {
  auto [n, rest] = unpair(z);
  std::vector<Transp> ts;
  if (n == 0) return ts;
  for (Nat i = 1; i < n; ++i) {
    auto [head, tail] = unpair(rest);
    ts.push_back(unpair(head));
    rest = tail;
  }
  ts.push_back(unpair(rest));
  return ts;
}

PermExpr eta_decode(Nat z) {
  auto ts = eta_decode_list(z);
  if (ts.empty()) return perm_identity();
  if (ts.size() == 1) return perm_transposition(ts[0].first, ts[0].second);
  return perm_finitary(std::move(ts));
}

std::optional<std::vector<Transp>> finitary_transpositions(const PermExpr& p) {
  if (auto f = std::dynamic_pointer_cast<const FinitaryPerm>(p)) return f->transpositions();
  if (p->kind() == "Identity") return std::vector<Transp>{};
  if (p->kind() == "Transposition") {
    Json j = p->to_json();
    return std::vector<Transp>{{std::stoull(j["x"].get<std::string>()),
                                std::stoull(j["y"].get<std::string>())}};
  }
  return std::nullopt;
}

Nat perm_eval(const PermExpr& p, Nat x, Fuel& fuel) { return p->apply(x, fuel); }
Nat perm_eval_inv(const PermExpr& p, Nat x, Fuel& fuel) { return p->apply_inv(x, fuel); }

std::vector<OrbitEntry> orbit_window(const PermExpr& p, Nat x, Nat steps, Fuel& fuel) {
  std::vector<OrbitEntry> out;
  Nat fwd = x, bwd = x;
  for (Nat i = 0; i < steps; ++i) {
    Int k = delta_inv(i);
    if (k < 0) {
      bwd = p->apply_inv(bwd, fuel);
      out.push_back({k, bwd});
    } else {
      if (k > 0) fwd = p->apply(fwd, fuel);
      out.push_back({k, fwd});
    }
  }
  return out;
}

namespace {
bool inverts_at(const PermExpr& p, Nat x) {
  Fuel fuel(kDefaultFuel);
  return p->apply_inv(p->apply(x, fuel), fuel) == x;
}
}  // namespace

bool window_bijection_check(const PermExpr& p, Nat window) {
  return window::all_of(window, [&](Nat x) { return inverts_at(p, x); });
}

bool window_bijection_check_serial(const PermExpr& p, Nat window) {
  return window::all_of_serial(window, [&](Nat x) { return inverts_at(p, x); });
}

}  // namespace permcyc
