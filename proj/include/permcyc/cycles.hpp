#pragma once

#include <vector>

#include "permcyc/expr.hpp"

namespace permcyc {

/// Converts between the five witness kinds. The result is lazy: any fuel a
/// conversion needs is drawn from the fuel passed to each query. The route
/// follows Decider -> MinRep -> Transversal -> Decider and
/// MinRep -> UniqueRep -> CharValue -> MinRep, plus the direct
/// MinRep/UniqueRep/CharValue -> Decider comparisons.
CycleWitness witness_convert(const CycleWitness& w, WitnessKind target);

/// Decider read off the subject's known_partition(); throws
/// PreconditionViolation if the subject has none.
CycleWitness intrinsic_witness(const PermExpr& f);

/// Decider given by an equivalence the caller asserts equals f's cycle partition.
CycleWitness witness_from_eq(const PermExpr& f, const EqExpr& eq);

/// xi k [f^k(x) = y]. Exhausted proves nothing.
SearchOutcome<Int> reachability_semidecider(const PermExpr& f, Nat x, Nat y, Fuel& fuel);

/// First k in xi order with pred(f^k(x)); iterates both directions incrementally.
SearchOutcome<Int> xi_power_search(const PermExpr& f, Nat x, const std::function<bool(Int, Nat)>& pred,
                                   Fuel& fuel);

/// Decider valid when f has at most one infinite cycle. Each query may probe
/// at most `safety` iterates; running past that raises PreconditionViolation.
CycleWitness decider_one_infinite(const PermExpr& f, Nat safety = kDefaultFuel);

/// Decider valid when `reps` holds exactly one element of every infinite cycle.
CycleWitness decider_few_infinite(const PermExpr& f, std::vector<Nat> reps, Nat safety = kDefaultFuel);

}  // namespace permcyc
