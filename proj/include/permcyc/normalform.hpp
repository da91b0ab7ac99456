#pragma once

#include <map>
#include <optional>
#include <vector>

#include "permcyc/equivalence.hpp"
#include "permcyc/expr.hpp"

namespace permcyc {

// Rho constructors.
RhoExpr rho_constant(RhoKind kind, Nat value);
/// Table lookup with a default for unlisted points.
RhoExpr rho_table(RhoKind kind, std::map<Nat, Nat> table, Nat fallback);
RhoExpr rho_for_constant_cardinality(Nat c);

struct BlockCardinality {
  Nat rep;
  std::optional<Nat> size;  // nullopt: infinite
};
/// Cardinality rho for an equivalence with the listed blocks only. Throws
/// PreconditionViolation at a point outside every listed block.
RhoExpr rho_for_finitely_many_blocks(EqExpr eq, std::vector<BlockCardinality> blocks);

/// Greater-element predicate of f's cycles, read off the witness.
RhoExpr rho_from_perm(PermExpr f, const CycleWitness& w);

/// The normal cyclic permutation with support the block of member.origin,
/// fixed elsewhere. The block must be infinite.
PermExpr build_cycle_from_set(const BlockDecider& member);

struct UnionCheck {
  bool closed = true;
  std::optional<Nat> escape;  // an element of f(A) \ A
};
UnionCheck finite_union_check(const PermExpr& f, const std::vector<Nat>& a, Fuel& fuel);

/// The normal permutation with the cycles of f.
PermExpr normalize(PermExpr f, const CycleWitness& w);

struct NormalMin {
  Nat value;
  Nat queries;  // number of f^k evaluations
};
/// Least element of [x] for a normal f, by galloping and binary search along
/// the ray towards the minimum.
NormalMin normal_min_counted(const PermExpr& f, Nat x);
Nat normal_min(const PermExpr& f, Nat x);

CycleWitness decider_from_normal(PermExpr f);

/// Finiteness of [x]_f for a semi-normal f.
CfDecider seminormal_cf_decider(PermExpr f);
PermExpr seminormal_to_normal(PermExpr f);

PermExpr perm_from_rho(EqExpr eq, RhoExpr rho);
PermExpr coproduct_perm_from_rho(FamilyExpr family, RhoExpr rho);
PermExpr seminormal_from_rho(EqExpr eq, RhoExpr rho);

enum class Verdict { Normal, SeminormalFinite, Violation };
std::string to_string(Verdict v);

struct CycleVerdict {
  Nat minimum = 0;
  Verdict verdict = Verdict::Normal;
  std::optional<Nat> length;  // set when the cycle closed during inspection
  // Violation: f^k(minimum) = value is not above `previous`, the value at
  // the preceding delta index.
  Int k = 0;
  Nat value = 0;
  Nat previous = 0;
};

struct NormalityReport {
  Nat window = 0;
  std::vector<CycleVerdict> cycles;

  bool normal() const;      // every inspected cycle normal
  bool seminormal() const;  // no violations
  Json to_json() const;
};

NormalityReport normality_report(const PermExpr& f, Nat window);
NormalityReport normality_report_serial(const PermExpr& f, Nat window);

}  // namespace permcyc
