#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "permcyc/conjugacy.hpp"
#include "permcyc/cycles.hpp"
#include "permcyc/equivalence.hpp"
#include "permcyc/gadgets.hpp"
#include "permcyc/normalform.hpp"
#include "permcyc/permutation.hpp"
#include "permcyc/serialize.hpp"
#include "suites.hpp"

using namespace permcyc;

namespace {

constexpr int kMalformed = 1;
constexpr int kPrecondition = 2;
constexpr int kExhausted = 3;

Nat parse_nat(const std::string& s) { return nat_from_json(Json(s)); }

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

PermExpr load_perm(const std::string& path) { return perm_from_json(load_json_file(path)); }
CycleWitness load_witness(const std::string& path) { return witness_from_json(load_json_file(path)); }

Json trace(const PermExpr& f, Nat start, Nat steps) {
  Json rows = Json::array();
  Fuel fuel(kDefaultFuel);
  Nat v = start;
  bool closed = false;
  for (Nat i = 0; i < steps; ++i) {
    rows.push_back(nat_json(v));
    v = f->apply(v, fuel);
    if (v == start) {
      closed = true;
      break;
    }
  }
  return {{"start", nat_json(start)}, {"orbit", rows}, {"closed", closed}};
}

struct Options {
  std::string perm, perm2, witness, iso, out, eq, program = "1";
  std::string x = "0", y = "0", fuel = std::to_string(kDefaultFuel);
  std::string steps = "32", window = "200", suite;
  bool inv = false, same_partition = false;
};

int cmd_eval(const Options& o) {
  PermExpr f = load_perm(o.perm);
  Fuel fuel(parse_nat(o.fuel));
  Nat x = parse_nat(o.x);
  std::cout << (o.inv ? perm_eval_inv(f, x, fuel) : perm_eval(f, x, fuel)) << '\n';
  return 0;
}

int cmd_orbit(const Options& o) {
  PermExpr f = load_perm(o.perm);
  Fuel fuel(parse_nat(o.fuel));
  std::cout << "k\tvalue\n";
  for (const auto& e : orbit_window(f, parse_nat(o.x), parse_nat(o.steps), fuel))
    std::cout << e.k << '\t' << e.value << '\n';
  return 0;
}

int cmd_decide(const Options& o) {
  Json j = load_json_file(o.eq);
  Fuel fuel(parse_nat(o.fuel));
  Nat x = parse_nat(o.x), y = parse_nat(o.y);
  bool related = j.is_object() && j.value("kind", "") == "Witness" ? witness_from_json(j).related(x, y, fuel)
                                                                    : eq_from_json(j)->related(x, y, fuel);
  std::cout << (related ? "true" : "false") << '\n';
  return 0;
}

int cmd_normalize(const Options& o) {
  Json out = normalize(load_perm(o.perm), load_witness(o.witness))->to_json();
  if (o.out.empty()) {
    emit(out);
    return 0;
  }
  std::ofstream file(o.out);
  if (!file) throw ParseError("cannot write " + o.out);
  file << out.dump(2) << '\n';
  return 0;
}

int cmd_conjugate(const Options& o) {
  PermExpr f = load_perm(o.perm), g = load_perm(o.perm2);
  CycleWitness w = o.witness.empty() ? intrinsic_witness(f) : load_witness(o.witness);
  PermExpr h;
  if (o.same_partition) {
    h = conjugator_same_partition(f, g, w);
  } else if (!o.iso.empty()) {
    h = conjugator_from_isomorphism(f, g, load_perm(o.iso), w);
  } else {
    throw ParseError("conjugate needs --same-partition or --iso");
  }
  Nat window = parse_nat(o.window);
  Json report = {{"window", nat_json(window)},
                 {"conjugates", verify_conjugation(f, g, h, window)},
                 {"bijective", window_bijection_check(h, window)}};
  emit({{"conjugator", h->to_json()}, {"verification", report}});
  return 0;
}

int cmd_gadget(const std::string& which, const Options& o) {
  Nat steps = parse_nat(o.steps), x = parse_nat(o.x);
  if (which == "halting") {
    Nat code = program_code_from_json(std::filesystem::exists(o.program) ? load_json_file(o.program) : Json(o.program));
    PermExpr hard = cf_hard_perm();
    auto s = halting_step(code, steps);
    emit({{"perm", hard->to_json()},
          {"program", program_to_json(decode_program(code))},
          {"halting_step", s ? Json(nat_json(*s)) : Json(nullptr)},
          {"trace", trace(hard, pair(code, 0), steps)}});
    return 0;
  }
  if (which == "oddlength") {
    PermExpr gp = odd_length_gadget(load_perm(o.perm));
    emit({{"perm", gp->to_json()}, {"trace", trace(gp, odd_length_embed(x), steps)}});
    return 0;
  }
  if (which == "interred-cd2cf") {
    CdToCf red = reduce_cd_to_cf(load_perm(o.perm));
    Nat w = red.j(pair(x, parse_nat(o.y)));
    emit({{"perm", red.g->to_json()}, {"trace", trace(red.g, w, steps)}});
    return 0;
  }
  if (which == "interred-cf2cd") {
    CfToCd red = reduce_cf_to_cd(load_perm(o.perm));
    emit({{"perm", red.f->to_json()},
          {"j", nat_json(red.j(x))},
          {"jprime", nat_json(red.jprime(x))},
          {"trace", trace(red.f, red.j(x), steps)}});
    return 0;
  }
  if (which == "conjreduction") {
    PermExpr f = load_perm(o.perm);
    CycleWitness w = o.witness.empty() ? intrinsic_witness(f) : load_witness(o.witness);
    auto red = conj_reduction_perm(f, w, x);
    Json block = Json::array();
    Fuel fuel(kDefaultFuel);
    Nat window = parse_nat(o.window);
    for (Nat a = 0; a < window; ++a)
      if (red.pi.related(x, a, fuel)) block.push_back(nat_json(a));
    emit({{"perm", red.fprime->to_json()}, {"witness", red.pi.to_json()}, {"block", block},
          {"trace", trace(red.fprime, x, steps)}});
    return 0;
  }
  throw ParseError("unknown gadget " + which);
}

int cmd_dot(const Options& o) {
  PermExpr f = load_perm(o.perm);
  Nat window = parse_nat(o.window);
  Fuel fuel(parse_nat(o.fuel));
  std::vector<Nat> image(window);
  bool sink = false;
  for (Nat x = 0; x < window; ++x) {
    image[x] = f->apply(x, fuel);
    sink = sink || image[x] >= window;
  }
  std::cout << "digraph perm {\n";
  for (Nat x = 0; x < window; ++x) std::cout << "  " << x << ";\n";
  if (sink) std::cout << "  \"…\" [shape=plaintext];\n";
  for (Nat x = 0; x < window; ++x) {
    std::cout << "  " << x << " -> ";
    if (image[x] >= window)
      std::cout << "\"…\"";
    else
      std::cout << image[x];
    std::cout << ";\n";
  }
  std::cout << "}\n";
  return 0;
}

int cmd_selfcheck(const Options& o) {
  bool all = true, any = false;
  for (const auto& c : suites::criteria()) {
    if (!o.suite.empty() && c.suite != o.suite) continue;
    any = true;
    auto out = suites::run(c);
    std::cout << suites::format(out) << std::endl;
    all = all && out.pass;
  }
  if (!any) throw ParseError("unknown suite " + o.suite);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computable permutations and their cycle structure"};
  app.require_subcommand(1);
  Options o;
  std::string gadget;

  auto* eval = app.add_subcommand("eval", "Evaluate f(x) or f^-1(x)");
  eval->add_option("perm", o.perm)->required();
  eval->add_option("x", o.x)->required();
  eval->add_flag("--inv", o.inv);
  eval->add_option("--fuel", o.fuel);

  auto* orbit = app.add_subcommand("orbit", "List f^k(x) for k = 0, -1, 1, -2, ...");
  orbit->add_option("perm", o.perm)->required();
  orbit->add_option("x", o.x)->required();
  orbit->add_option("--steps", o.steps)->required();
  orbit->add_option("--fuel", o.fuel);

  auto* decide = app.add_subcommand("decide", "Decide x ~ y for an equivalence or cycle witness");
  decide->add_option("relation", o.eq)->required();
  decide->add_option("x", o.x)->required();
  decide->add_option("y", o.y)->required();
  decide->add_option("--fuel", o.fuel);

  auto* norm = app.add_subcommand("normalize", "Normal form with the same cycles");
  norm->add_option("perm", o.perm)->required();
  norm->add_option("--witness", o.witness)->required();
  norm->add_option("-o,--output", o.out);

  auto* conj = app.add_subcommand("conjugate", "Build h with f = h^-1 g h");
  conj->add_option("f", o.perm)->required();
  conj->add_option("g", o.perm2)->required();
  conj->add_flag("--same-partition", o.same_partition);
  conj->add_option("--witness", o.witness);
  conj->add_option("--iso", o.iso);
  conj->add_option("--window", o.window);

  auto* gad = app.add_subcommand("gadget", "Reduction gadgets with a trace");
  gad->add_option("which", gadget)
      ->required()
      ->check(CLI::IsMember({"halting", "oddlength", "interred-cd2cf", "interred-cf2cd", "conjreduction"}));
  gad->add_option("perm", o.perm);
  gad->add_option("--program", o.program);
  gad->add_option("--witness", o.witness);
  gad->add_option("--x", o.x);
  gad->add_option("--y", o.y);
  gad->add_option("--steps", o.steps);
  gad->add_option("--window", o.window);

  auto* dot = app.add_subcommand("dot", "Graphviz digraph of x -> f(x) on a window");
  dot->add_option("perm", o.perm)->required();
  dot->add_option("--window", o.window)->required();
  dot->add_option("--fuel", o.fuel);

  auto* self = app.add_subcommand("selfcheck", "Run the acceptance suites");
  self->add_option("--suite", o.suite)->check(CLI::IsMember(suites::suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  try {
    if (*eval) return cmd_eval(o);
    if (*orbit) return cmd_orbit(o);
    if (*decide) return cmd_decide(o);
    if (*norm) return cmd_normalize(o);
    if (*conj) return cmd_conjugate(o);
    if (*gad) {
      if (gadget != "halting" && o.perm.empty()) throw ParseError("gadget " + gadget + " needs a permutation file");
      return cmd_gadget(gadget, o);
    }
    if (*dot) return cmd_dot(o);
    if (*self) return cmd_selfcheck(o);
  } catch (const FuelExhausted& e) {
    std::cerr << "fuel exhausted: " << e.what() << '\n';
    return kExhausted;
  } catch (const PreconditionViolation& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return kPrecondition;
  } catch (const ParseError& e) {
    std::cerr << "malformed input: " << e.what() << '\n';
    return kMalformed;
  } catch (const Json::exception& e) {
    std::cerr << "malformed input: " << e.what() << '\n';
    return kMalformed;
  } catch (const OverflowError& e) {
    std::cerr << "malformed input: " << e.what() << '\n';
    return kMalformed;
  }
  return kMalformed;
}
