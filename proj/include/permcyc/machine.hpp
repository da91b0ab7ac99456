#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "permcyc/core.hpp"

namespace permcyc {

/// Two-register machine used as the program universe for the halting
/// constructions. Every natural number decodes to a program.
enum class Op { Inc, DecJz, Halt };

struct Instr {
  Op op = Op::Halt;
  unsigned reg = 0;
  Nat target = 0;  // DecJz only
  bool operator==(const Instr&) const = default;
};

struct ToyProgram {
  std::vector<Instr> code;
  bool operator==(const ToyProgram&) const = default;
};

Instr inc(unsigned reg);
Instr decjz(unsigned reg, Nat target);
Instr halt();

/// 0 = HALT, 1 = INC r0, 2 = INC r1, 3 + 2t + r = DECJZ(r, t).
Nat encode_instr(const Instr& i);
Instr decode_instr(Nat c);

/// 0 = empty list, 1 + <head, tail> otherwise.
Nat encode_program(const ToyProgram& p);
ToyProgram decode_program(Nat code);

std::string describe(const Instr& i);

struct MachineConfig {
  Nat ip = 0;
  std::array<Nat, 2> reg{0, 0};
  Nat steps = 0;
  bool halted = false;
  bool operator==(const MachineConfig&) const = default;
};

/// Program `code` started on its own code in register 0.
MachineConfig initial_config(Nat code);

/// One transition. Executing HALT (or falling off the program) costs one
/// step and sets `halted`; a halted configuration no longer changes.
void step(const ToyProgram& p, MachineConfig& c);

/// Step at which program `code` halts on input `code`, if that is <= limit.
std::optional<Nat> halting_step(Nat code, Nat limit);

/// r'_x(n): halts after <= n steps. False for n = 0.
bool halts_within(Nat code, Nat n);

}  // namespace permcyc
