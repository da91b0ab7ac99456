#pragma once

#include <stdexcept>
#include <string>

#include "permcyc/expr.hpp"
#include "permcyc/machine.hpp"

namespace permcyc {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Naturals are decimal strings; plain non-negative JSON integers are accepted too.
Nat nat_from_json(const Json& j);
Int int_from_json(const Json& j);

PermExpr perm_from_json(const Json& j);
EqExpr eq_from_json(const Json& j);
FunExpr fun_from_json(const Json& j);
FamilyExpr family_from_json(const Json& j);
RhoExpr rho_from_json(const Json& j);
CycleWitness witness_from_json(const Json& j);

/// {"kind":"Program","code":[{"op":"INC","reg":0}, {"op":"DECJZ","reg":1,"target":"0"}, {"op":"HALT"}]}
Json program_to_json(const ToyProgram& p);
ToyProgram program_from_json(const Json& j);
/// A program code given either as a decimal string or as a Program object.
Nat program_code_from_json(const Json& j);

Json load_json_file(const std::string& path);

}  // namespace permcyc
