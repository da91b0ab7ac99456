#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "permcyc/core.hpp"

namespace permcyc {

using Json = nlohmann::json;

class PermNode;
class EqNode;
class FunNode;
class FamilyNode;
class RhoNode;

using PermExpr = std::shared_ptr<const PermNode>;
using EqExpr = std::shared_ptr<const EqNode>;
using FunExpr = std::shared_ptr<const FunNode>;
using FamilyExpr = std::shared_ptr<const FamilyNode>;
using RhoExpr = std::shared_ptr<const RhoNode>;

/// Total computable function N -> N.
class FunNode {
 public:
  virtual ~FunNode() = default;
  virtual std::string kind() const = 0;
  virtual Nat apply(Nat x) const = 0;
  virtual Json to_json() const = 0;
};

/// Decidable equivalence relation on N.
class EqNode {
 public:
  virtual ~EqNode() = default;
  virtual std::string kind() const = 0;
  virtual bool related(Nat x, Nat y, Fuel& fuel) const = 0;
  virtual Json to_json() const = 0;

  /// All y <= x with y related to x, increasing.
  virtual std::vector<Nat> members_upto(Nat x, Fuel& fuel) const;

  /// Least y > x related to x. With a bound, answers nullopt if there is
  /// none <= bound; without one the search runs on fuel.
  virtual std::optional<Nat> next_member(Nat x, std::optional<Nat> bound, Fuel& fuel) const;
};

/// Uniformly decidable family z -> Pi_z.
class FamilyNode {
 public:
  virtual ~FamilyNode() = default;
  virtual std::string kind() const = 0;
  virtual EqExpr member(Nat z) const = 0;
  virtual Json to_json() const = 0;
  virtual bool related(Nat z, Nat x, Nat y, Fuel& fuel) const;
};

/// Computable permutation of N with both directions evaluable.
class PermNode {
 public:
  virtual ~PermNode() = default;
  virtual std::string kind() const = 0;
  virtual Nat apply(Nat x, Fuel& fuel) const = 0;
  virtual Nat apply_inv(Nat x, Fuel& fuel) const = 0;
  virtual Json to_json() const = 0;

  /// f^k(x). The default iterates; closed forms override it.
  virtual Nat power(Nat x, Int k, Fuel& fuel) const;

  /// The cycle partition when the construction itself determines it.
  virtual EqExpr known_partition() const { return nullptr; }
};

enum class RhoKind { GreaterElement, Cardinality, CoproductGreaterElement };

std::string to_string(RhoKind k);
RhoKind rho_kind_from_string(const std::string& s);

/// The three different functions called rho: a greater-element predicate
/// (0/1), a block cardinality (0 meaning infinite), or the greater-element
/// predicate of a coproduct on pair codes.
class RhoNode {
 public:
  virtual ~RhoNode() = default;
  virtual std::string kind() const = 0;
  virtual RhoKind rho_kind() const = 0;
  virtual Nat eval(Nat x, Fuel& fuel) const = 0;
  virtual Json to_json() const = 0;
};

enum class WitnessKind { Decider, MinRep, UniqueRep, CharValue, Transversal };

std::string to_string(WitnessKind k);
WitnessKind witness_kind_from_string(const std::string& s);

/// One of the five interchangeable witnesses for decidable cycles.
/// Decider answers related(x, y); the other kinds answer value(x).
class CycleWitness {
 public:
  using Relation = std::function<bool(Nat, Nat, Fuel&)>;
  using Map = std::function<Nat(Nat, Fuel&)>;

  static CycleWitness decider(PermExpr subject, Relation pi, Json recipe = nullptr);
  /// A decider that is the relatedness of a known equivalence.
  static CycleWitness from_partition(PermExpr subject, EqExpr partition, Json recipe = nullptr);
  static CycleWitness mapping(WitnessKind kind, PermExpr subject, Map m, Json recipe = nullptr);

  WitnessKind kind() const { return kind_; }
  const PermExpr& subject() const { return subject_; }
  const Json& recipe() const { return recipe_; }
  /// The cycle partition as an equivalence, when the witness was built from one.
  const EqExpr& partition() const { return partition_; }
  bool serializable() const { return !recipe_.is_null(); }

  bool related(Nat x, Nat y, Fuel& fuel) const;
  Nat value(Nat x, Fuel& fuel) const;

  /// {"kind":"Witness", ...}; throws std::logic_error without a recipe.
  Json to_json() const;

 private:
  WitnessKind kind_ = WitnessKind::Decider;
  PermExpr subject_;
  Relation relation_;
  Map map_;
  Json recipe_;
  EqExpr partition_;
};

/// x -> [|[x]_f| < infinity]
using CfDecider = std::function<bool(Nat, Fuel&)>;

/// Decimal-string encoding used for every natural in JSON.
Json nat_json(Nat x);
Json int_json(Int k);

}  // namespace permcyc
