#include "permcyc/machine.hpp"

#include <algorithm>

namespace permcyc {

Instr inc(unsigned reg) { return {Op::Inc, reg, 0}; }
Instr decjz(unsigned reg, Nat target) { return {Op::DecJz, reg, target}; }
Instr halt() { return {Op::Halt, 0, 0}; }

Nat encode_instr(const Instr& i) {
  switch (i.op) {
    case Op::Halt: return 0;
    case Op::Inc: return 1 + (i.reg & 1);
    case Op::DecJz: return checked_add(3, checked_add(checked_mul(i.target, 2), i.reg & 1));
  }
  return 0;
}

Instr decode_instr(Nat c) {
  if (c == 0) return halt();
  if (c <= 2) return inc(static_cast<unsigned>(c - 1));
  Nat d = c - 3;
  return decjz(static_cast<unsigned>(d % 2), d / 2);
}

Nat encode_program(const ToyProgram& p) {
  Nat z = 0;
  for (auto it = p.code.rbegin(); it != p.code.rend(); ++it)
    z = checked_add(1, pair(encode_instr(*it), z));
  return z;
}

ToyProgram decode_program(Nat code) {
  ToyProgram p;
  while (code != 0) {
    auto [head, tail] = unpair(code - 1);
    p.code.push_back(decode_instr(head));
    code = tail;
  }
  return p;
}

std::string describe(const Instr& i) {
  switch (i.op) {
    case Op::Halt: return "HALT";
    case Op::Inc: return "INC r" + std::to_string(i.reg);
    case Op::DecJz: return "DECJZ r" + std::to_string(i.reg) + " " + std::to_string(i.target);
  }
  return "?";
}

MachineConfig initial_config(Nat code) {
  MachineConfig c;
  c.reg[0] = code;
  return c;
}

void step(const ToyProgram& p, MachineConfig& c) {
  if (c.halted) return;
  ++c.steps;
  if (c.ip >= p.code.size()) {
    c.halted = true;
    return;
  }
  const Instr& i = p.code[c.ip];
  switch (i.op) {
    case Op::Halt:
      c.halted = true;
      break;
    case Op::Inc:
      c.reg[i.reg] = checked_add(c.reg[i.reg], 1);
      ++c.ip;
      break;
    case Op::DecJz:
      if (c.reg[i.reg] == 0) {
        c.ip = i.target;
      } else {
        --c.reg[i.reg];
        ++c.ip;
      }
      break;
  }
}

std::optional<Nat> halting_step(Nat code, Nat limit) {
  ToyProgram p = decode_program(code);
  MachineConfig c = initial_config(code);
  while (c.steps < limit && !c.halted) step(p, c);
  if (c.halted) return c.steps;
  return std::nullopt;
}

bool halts_within(Nat code, Nat n) { return halting_step(code, n).has_value(); }

}  // namespace permcyc
