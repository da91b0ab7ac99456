#include "permcyc/serialize.hpp"

#include <charconv>
#include <fstream>
#include <map>

#include "permcyc/conjugacy.hpp"
#include "permcyc/cycles.hpp"
#include "permcyc/equivalence.hpp"
#include "permcyc/gadgets.hpp"
#include "permcyc/normalform.hpp"
#include "permcyc/permutation.hpp"
#include "permcyc/products.hpp"

namespace permcyc {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw ParseError(std::string("missing field \"") + name + "\" in " + j.dump());
  return j.at(name);
}

std::string kind_of(const Json& j) {
  const Json& k = field(j, "kind");
  if (!k.is_string()) throw ParseError("\"kind\" must be a string");
  return k.get<std::string>();
}

std::string str(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_string()) throw ParseError(std::string("field \"") + name + "\" must be a string");
  return v.get<std::string>();
}

Nat nat_field(const Json& j, const char* name) { return nat_from_json(field(j, name)); }

const Json& array_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_array()) throw ParseError(std::string("field \"") + name + "\" must be an array");
  return v;
}

HaltingVariant variant(const Json& j) {
  try {
    return halting_variant_from_string(str(j, "variant"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

RhoKind rho_kind(const Json& j) {
  try {
    return rho_kind_from_string(str(j, "rho_kind"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::map<Nat, Nat> table(const Json& rows) {
  std::map<Nat, Nat> t;
  for (const Json& row : rows) {
    if (!row.is_array() || row.size() != 2) throw ParseError("table rows are [key, value] pairs");
    t[nat_from_json(row[0])] = nat_from_json(row[1]);
  }
  return t;
}

PiecewiseRule rule_from_json(const Json& j) {
  PiecewiseRule r;
  r.modulus = nat_field(j, "modulus");
  r.residue = nat_field(j, "residue");
  if (j.contains("const")) {
    r.constant = true;
    r.value = nat_field(j, "const");
  } else {
    r.a = nat_field(j, "a");
    r.b = int_from_json(field(j, "b"));
  }
  return r;
}

template <class T>
using Parser = std::function<T(const Json&)>;

template <class T>
T dispatch(const std::map<std::string, Parser<T>>& table, const Json& j, const char* what) {
  std::string k = kind_of(j);
  auto it = table.find(k);
  if (it == table.end()) throw ParseError(std::string("unknown ") + what + " kind \"" + k + "\"");
  return it->second(j);
}

}  // namespace

Nat nat_from_json(const Json& j) {
  if (j.is_number_unsigned()) return j.get<Nat>();
  if (j.is_number_integer() && j.get<Int>() >= 0) return static_cast<Nat>(j.get<Int>());
  if (!j.is_string()) throw ParseError("natural numbers are decimal strings, got " + j.dump());
  const std::string s = j.get<std::string>();
  Nat v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("not a natural number below 2^64: \"" + s + "\"");
  return v;
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return j.get<Int>();
  if (!j.is_string()) throw ParseError("integers are decimal strings, got " + j.dump());
  const std::string s = j.get<std::string>();
  Int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("not a 64-bit integer: \"" + s + "\"");
  return v;
}

FunExpr fun_from_json(const Json& j) {
  static const std::map<std::string, Parser<FunExpr>> t = {
      {"Const", [](const Json& j) { return fun_const(nat_field(j, "value")); }},
      {"Identity", [](const Json&) { return fun_identity(); }},
      {"Mod", [](const Json& j) { return fun_mod(nat_field(j, "modulus")); }},
      {"TableThenIdentity", [](const Json& j) { return fun_table(table(array_field(j, "table"))); }},
      {"HaltingLabel", [](const Json& j) { return fun_halting_label(variant(j)); }},
      {"Compose",
       [](const Json& j) { return fun_compose(fun_from_json(field(j, "outer")), fun_from_json(field(j, "inner"))); }},
      {"PairLeft", [](const Json&) { return fun_pair_left(); }},
      {"PairRight", [](const Json&) { return fun_pair_right(); }},
  };
  return dispatch(t, j, "function");
}

FamilyExpr family_from_json(const Json& j) {
  static const std::map<std::string, Parser<FamilyExpr>> t = {
      {"ConstantFamily", [](const Json& j) { return family_constant(eq_from_json(field(j, "eq"))); }},
      {"HaltingFamily", [](const Json& j) { return family_halting(variant(j)); }},
      {"PiXYFamily", [](const Json& j) { return family_pixy(perm_from_json(field(j, "perm"))); }},
  };
  return dispatch(t, j, "family");
}

EqExpr eq_from_json(const Json& j) {
  static const std::map<std::string, Parser<EqExpr>> t = {
      {"Singletons", [](const Json&) { return eq_singletons(); }},
      {"Full", [](const Json&) { return eq_full(); }},
      {"Modulo",
       [](const Json& j) {
         Nat m = nat_field(j, "modulus");
         if (m == 0) throw ParseError("Modulo needs a positive modulus");
         return eq_modulo(m);
       }},
      {"FibersOf", [](const Json& j) { return eq_fibers(fun_from_json(field(j, "fun"))); }},
      {"CycleEqOf",
       [](const Json& j) { return eq_cycles(perm_from_json(field(j, "perm")), witness_from_json(field(j, "witness"))); }},
      {"Image",
       [](const Json& j) { return eq_image(eq_from_json(field(j, "base")), perm_from_json(field(j, "perm"))); }},
      {"Coproduct", [](const Json& j) { return coproduct(family_from_json(field(j, "family"))); }},
      {"HaltingBlocks", [](const Json& j) { return eq_halting_blocks(variant(j)); }},
      {"PiXY",
       [](const Json& j) {
         return eq_pixy(perm_from_json(field(j, "perm")), nat_field(j, "x"), nat_field(j, "y"));
       }},
      {"HaltingMember",
       [](const Json& j) { return halting_member_eq(program_code_from_json(field(j, "program")), variant(j)); }},
      {"SupportOf",
       [](const Json& j) { return eq_support_of(eq_from_json(field(j, "eq")), nat_field(j, "origin")); }},
      {"ConjReductionBlocks",
       [](const Json& j) {
         return conj_reduction_blocks(perm_from_json(field(j, "perm")), witness_from_json(field(j, "witness")),
                                      nat_field(j, "x"));
       }},
  };
  return dispatch(t, j, "equivalence");
}

RhoExpr rho_from_json(const Json& j) {
  static const std::map<std::string, Parser<RhoExpr>> t = {
      {"ConstantRho", [](const Json& j) { return rho_constant(rho_kind(j), nat_field(j, "value")); }},
      {"TableRho",
       [](const Json& j) { return rho_table(rho_kind(j), table(array_field(j, "table")), nat_field(j, "default")); }},
      {"FiniteBlocksRho",
       [](const Json& j) {
         std::vector<BlockCardinality> bs;
         for (const Json& b : array_field(j, "blocks")) {
           const Json& size = field(b, "size");
           bs.push_back({nat_field(b, "rep"), size.is_null() ? std::nullopt : std::optional<Nat>(nat_from_json(size))});
         }
         return rho_for_finitely_many_blocks(eq_from_json(field(j, "eq")), std::move(bs));
       }},
      {"FromPermRho",
       [](const Json& j) { return rho_from_perm(perm_from_json(field(j, "perm")), witness_from_json(field(j, "witness"))); }},
      {"HaltingStepRho", [](const Json&) { return rho_halting_step(); }},
      {"AdjacentRelatedRho", [](const Json& j) { return rho_adjacent_related(perm_from_json(field(j, "perm"))); }},
  };
  return dispatch(t, j, "rho");
}

PermExpr perm_from_json(const Json& j) {
  static const std::map<std::string, Parser<PermExpr>> t = {
      {"Identity", [](const Json&) { return perm_identity(); }},
      {"Transposition", [](const Json& j) { return perm_transposition(nat_field(j, "x"), nat_field(j, "y")); }},
      {"FinitaryProduct",
       [](const Json& j) {
         std::vector<Transp> ts;
         for (const Json& t : array_field(j, "transpositions")) {
           if (!t.is_array() || t.size() != 2) throw ParseError("transpositions are [x, y] pairs");
           ts.emplace_back(nat_from_json(t[0]), nat_from_json(t[1]));
         }
         return perm_finitary(std::move(ts));
       }},
      {"Eta", [](const Json& j) { return eta_decode(nat_field(j, "code")); }},
      {"DeltaSucc", [](const Json&) { return perm_delta_succ(); }},
      {"PiecewiseResidue",
       [](const Json& j) {
         std::vector<PiecewiseRule> rules;
         for (const Json& r : array_field(j, "rules")) rules.push_back(rule_from_json(r));
         return perm_piecewise(std::move(rules));
       }},
      {"Compose",
       [](const Json& j) {
         return perm_compose(perm_from_json(field(j, "outer")), perm_from_json(field(j, "inner")));
       }},
      {"Inverse", [](const Json& j) { return perm_inverse(perm_from_json(field(j, "base"))); }},
      {"NormalFromSet",
       [](const Json& j) {
         return build_cycle_from_set(BlockDecider{eq_from_json(field(j, "eq")), nat_field(j, "origin")});
       }},
      {"FromRho",
       [](const Json& j) { return perm_from_rho(eq_from_json(field(j, "eq")), rho_from_json(field(j, "rho"))); }},
      {"SeminormalFromRho",
       [](const Json& j) { return seminormal_from_rho(eq_from_json(field(j, "eq")), rho_from_json(field(j, "rho"))); }},
      {"CoproductPerm",
       [](const Json& j) {
         return coproduct_perm_from_rho(family_from_json(field(j, "family")), rho_from_json(field(j, "rho")));
       }},
      {"OddLengthGadget", [](const Json& j) { return odd_length_gadget(perm_from_json(field(j, "g"))); }},
      {"InterredCFPerm", [](const Json& j) { return interred_cf_perm(perm_from_json(field(j, "perm"))); }},
      {"ConjReductionPerm",
       [](const Json& j) {
         return conj_reduction_perm(perm_from_json(field(j, "perm")), witness_from_json(field(j, "witness")),
                                    nat_field(j, "x"))
             .fprime;
       }},
      {"TranspositionTimes",
       [](const Json& j) {
         return transposition_times_perm(nat_field(j, "x"), nat_field(j, "y"), perm_from_json(field(j, "base")));
       }},
      {"ConjugatorSamePartition",
       [](const Json& j) {
         return conjugator_same_partition(perm_from_json(field(j, "f")), perm_from_json(field(j, "g")),
                                          witness_from_json(field(j, "witness")));
       }},
      {"Normalized",
       [](const Json& j) { return normalize(perm_from_json(field(j, "base")), witness_from_json(field(j, "witness"))); }},
      {"SeminormalToNormal", [](const Json& j) { return seminormal_to_normal(perm_from_json(field(j, "base"))); }},
  };
  return dispatch(t, j, "permutation");
}

CycleWitness witness_from_json(const Json& j) {
  if (kind_of(j) != "Witness") throw ParseError("expected a Witness, got kind \"" + kind_of(j) + "\"");
  WitnessKind want;
  try {
    want = witness_kind_from_string(str(j, "witness"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  PermExpr subject = perm_from_json(field(j, "subject"));
  const Json& recipe = field(j, "recipe");
  std::string r = kind_of(recipe);
  auto safety = [&] { return recipe.contains("safety") ? nat_field(recipe, "safety") : kDefaultFuel; };

  CycleWitness w = [&]() -> CycleWitness {
    if (r == "Intrinsic") return intrinsic_witness(subject);
    if (r == "FromEq") return witness_from_eq(subject, eq_from_json(field(recipe, "eq")));
    if (r == "OneInfinite") return decider_one_infinite(subject, safety());
    if (r == "FewInfinite") {
      std::vector<Nat> reps;
      for (const Json& x : array_field(recipe, "reps")) reps.push_back(nat_from_json(x));
      return decider_few_infinite(subject, std::move(reps), safety());
    }
    if (r == "FromNormal") return decider_from_normal(subject);
    if (r == "Convert") return witness_convert(witness_from_json(field(recipe, "source")), want);
    throw ParseError("unknown witness recipe \"" + r + "\"");
  }();
  if (w.kind() != want)
    throw ParseError("witness recipe \"" + r + "\" yields a " + to_string(w.kind()) + ", not a " + to_string(want));
  return w;
}

Json program_to_json(const ToyProgram& p) {
  Json code = Json::array();
  for (const Instr& i : p.code) {
    switch (i.op) {
      case Op::Halt: code.push_back({{"op", "HALT"}}); break;
      case Op::Inc: code.push_back({{"op", "INC"}, {"reg", nat_json(i.reg)}}); break;
      case Op::DecJz: code.push_back({{"op", "DECJZ"}, {"reg", nat_json(i.reg)}, {"target", nat_json(i.target)}}); break;
    }
  }
  return {{"kind", "Program"}, {"code", code}};
}

ToyProgram program_from_json(const Json& j) {
  if (kind_of(j) != "Program") throw ParseError("expected a Program");
  ToyProgram p;
  for (const Json& i : array_field(j, "code")) {
    std::string op = str(i, "op");
    auto reg = [&] {
      Nat r = nat_from_json(field(i, "reg"));
      if (r > 1) throw ParseError("registers are 0 and 1");
      return static_cast<unsigned>(r);
    };
    if (op == "HALT") p.code.push_back(halt());
    else if (op == "INC") p.code.push_back(inc(reg()));
    else if (op == "DECJZ") p.code.push_back(decjz(reg(), nat_field(i, "target")));
    else throw ParseError("unknown instruction \"" + op + "\"");
  }
  return p;
}

Nat program_code_from_json(const Json& j) {
  if (j.is_object()) return encode_program(program_from_json(j));
  return nat_from_json(j);
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace permcyc
