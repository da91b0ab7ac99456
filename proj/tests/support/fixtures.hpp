#pragma once

#include <string>
#include <vector>

#include "permcyc/expr.hpp"
#include "permcyc/permutation.hpp"

// Permutations with known cycle structure, together with deciders that are
// written down from that structure rather than computed.
namespace fixtures {

using permcyc::Nat;

struct Fixture {
  std::string name;
  permcyc::PermExpr perm;
  permcyc::CycleWitness witness;
  permcyc::CfDecider cf;
  bool normal = false;
};

/// The evens cycle ..., 6, 2, 0, 4, 8, ... with odd points fixed.
Fixture g();
/// Normal cycle on the evens (or odds), the rest fixed.
Fixture evens_cycle();
Fixture odds_cycle();
/// Two normal infinite cycles, evens and odds.
Fixture two_cycles();
/// The evens cycle plus the 3-cycle 1 -> 3 -> 5 -> 1.
Fixture mixed();
Fixture identity();
Fixture delta_succ();
Fixture finitary(const std::vector<permcyc::Transp>& ts);

std::vector<Fixture> infinite_fixtures();

}  // namespace fixtures
