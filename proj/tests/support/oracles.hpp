#pragma once

#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "permcyc/expr.hpp"
#include "permcyc/permutation.hpp"

// Brute-force reference implementations. None of them call the library's
// cycle logic; they only evaluate permutations pointwise.
namespace oracle {

using permcyc::Int;
using permcyc::Nat;
using permcyc::PermExpr;
using permcyc::Transp;

// --- machine -----------------------------------------------------------

enum class OpCode { Inc, DecJz, Halt };

struct Ins {
  OpCode op;
  unsigned reg = 0;
  Nat target = 0;
};
using Prog = std::vector<Ins>;

Ins INC(unsigned r);
Ins DECJZ(unsigned r, Nat t);
Ins HALT();

/// Code of a program, computed without the library's encoder.
Nat encode(const Prog& p);
Prog decode(Nat code);

std::pair<Nat, Nat> unpair(Nat z);

enum class Fate { Halts, Loops, Unknown };

struct Run {
  Fate fate = Fate::Unknown;
  Nat steps = 0;  // halting step, or the step at which a state repeated
};

/// Runs p on its own code. A repeated (ip, r0, r1) state certifies looping.
Run run(const Prog& p, Nat limit);

struct LabeledProgram {
  std::string name;
  Prog prog;
  Nat code;
  Fate fate;
  Nat steps;  // hand-counted halting step; 0 for loopers
};

/// Ten halting programs and ten loopers with bounded state graphs.
const std::vector<LabeledProgram>& labeled_programs();

// --- cycles ------------------------------------------------------------

struct Closure {
  bool closed = false;
  std::vector<Nat> members;  // in forward order from x
};

/// Iterates f from x for at most `bound` steps.
Closure orbit_closure(const PermExpr& f, Nat x, Nat bound);

/// Exponent k with f^k(x) = y, |k| <= bound, smallest |k| first, negative first.
std::optional<Int> exponent(const PermExpr& f, Nat x, Nat y, Nat bound);

bool same_cycle(const PermExpr& f, Nat x, Nat y, Nat bound);

/// Component label of every x < window, found by walking `bound` steps each way.
std::vector<Nat> component_labels(const PermExpr& f, Nat window, Nat bound);

/// Cycles of a product of transpositions, from an explicit table.
class Finitary {
 public:
  explicit Finitary(const std::vector<Transp>& ts);
  Nat apply(Nat x) const;
  bool related(Nat x, Nat y) const;
  Nat cycle_length(Nat x) const;

 private:
  std::unordered_map<Nat, Nat> map_;
  std::unordered_map<Nat, Nat> label_;
  std::unordered_map<Nat, Nat> length_;
};

// --- generators --------------------------------------------------------

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  Nat below(Nat n) { return std::uniform_int_distribution<Nat>(0, n - 1)(rng_); }
  bool coin() { return below(2) == 1; }
  /// Up to `count` transpositions of distinct points in [0, range).
  std::vector<Transp> transpositions(Nat count, Nat range);

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
