#include "permcyc/expr.hpp"

#include <stdexcept>

namespace permcyc {

std::vector<Nat> EqNode::members_upto(Nat x, Fuel& fuel) const {
  std::vector<Nat> out;
  for (Nat y = 0; y < x; ++y)
    if (related(y, x, fuel)) out.push_back(y);
  out.push_back(x);
  return out;
}

std::optional<Nat> EqNode::next_member(Nat x, std::optional<Nat> bound, Fuel& fuel) const {
  for (Nat y = checked_add(x, 1);; ++y) {
    if (bound && y > *bound) return std::nullopt;
    fuel.consume();
    if (related(x, y, fuel)) return y;
  }
}

bool FamilyNode::related(Nat z, Nat x, Nat y, Fuel& fuel) const {
  return member(z)->related(x, y, fuel);
}

Nat PermNode::power(Nat x, Int k, Fuel& fuel) const {
  if (k >= 0) {
    for (Int i = 0; i < k; ++i) x = apply(x, fuel);
  } else {
    for (Int i = 0; i > k; --i) x = apply_inv(x, fuel);
  }
  return x;
}

std::string to_string(RhoKind k) {
  switch (k) {
    case RhoKind::GreaterElement: return "GreaterElement";
    case RhoKind::Cardinality: return "Cardinality";
    case RhoKind::CoproductGreaterElement: return "CoproductGreaterElement";
  }
  return "?";
}

RhoKind rho_kind_from_string(const std::string& s) {
  if (s == "GreaterElement") return RhoKind::GreaterElement;
  if (s == "Cardinality") return RhoKind::Cardinality;
  if (s == "CoproductGreaterElement") return RhoKind::CoproductGreaterElement;
  throw std::invalid_argument("unknown rho kind: " + s);
}

std::string to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::Decider: return "Decider";
    case WitnessKind::MinRep: return "MinRep";
    case WitnessKind::UniqueRep: return "UniqueRep";
    case WitnessKind::CharValue: return "CharValue";
    case WitnessKind::Transversal: return "Transversal";
  }
  return "?";
}

WitnessKind witness_kind_from_string(const std::string& s) {
  if (s == "Decider") return WitnessKind::Decider;
  if (s == "MinRep") return WitnessKind::MinRep;
  if (s == "UniqueRep") return WitnessKind::UniqueRep;
  if (s == "CharValue") return WitnessKind::CharValue;
  if (s == "Transversal") return WitnessKind::Transversal;
  throw std::invalid_argument("unknown witness kind: " + s);
}

CycleWitness CycleWitness::decider(PermExpr subject, Relation pi, Json recipe) {
  CycleWitness w;
  w.kind_ = WitnessKind::Decider;
  w.subject_ = std::move(subject);
  w.relation_ = std::move(pi);
  w.recipe_ = std::move(recipe);
  return w;
}

CycleWitness CycleWitness::from_partition(PermExpr subject, EqExpr partition, Json recipe) {
  EqExpr eq = partition;
  CycleWitness w = decider(
      std::move(subject), [eq](Nat x, Nat y, Fuel& fuel) { return eq->related(x, y, fuel); }, std::move(recipe));
  w.partition_ = std::move(partition);
  return w;
}

CycleWitness CycleWitness::mapping(WitnessKind kind, PermExpr subject, Map m, Json recipe) {
  if (kind == WitnessKind::Decider) throw std::invalid_argument("a Decider witness needs a relation");
  CycleWitness w;
  w.kind_ = kind;
  w.subject_ = std::move(subject);
  w.map_ = std::move(m);
  w.recipe_ = std::move(recipe);
  return w;
}

bool CycleWitness::related(Nat x, Nat y, Fuel& fuel) const {
  if (kind_ != WitnessKind::Decider) throw std::logic_error("related() needs a Decider witness");
  return relation_(x, y, fuel);
}

Nat CycleWitness::value(Nat x, Fuel& fuel) const {
  if (kind_ == WitnessKind::Decider) throw std::logic_error("value() is undefined for a Decider witness");
  return map_(x, fuel);
}

Json CycleWitness::to_json() const {
  if (recipe_.is_null()) throw std::logic_error("witness has no serializable recipe");
  return Json{{"kind", "Witness"},
              {"witness", to_string(kind_)},
              {"subject", subject_->to_json()},
              {"recipe", recipe_}};
}

Json nat_json(Nat x) { return std::to_string(x); }
Json int_json(Int k) { return std::to_string(k); }

}  // namespace permcyc
