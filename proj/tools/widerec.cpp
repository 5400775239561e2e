// widerec: wide subcategories and idempotent recollements of path algebras.
//
//   widerec indec spec.json
//   widerec wide spec.json [--containing-image]
//   widerec bijection spec.json [--dot]
//   widerec check spec.json --theorem 3.8
//   widerec table1
//   widerec fuzz --seed 42 --count 25

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "widerec/commands.hpp"

namespace {

struct Globals {
  bool json = false;
  bool dot = false;
  int p = 0;
  bool timings = false;
};

int emit(const widerec::Report& r, const Globals& g) {
  if (g.json)
    std::cout << r.to_json().dump(2) << "\n";
  else if (g.dot && !r.dot.empty())
    std::cout << r.dot;
  else
    std::cout << r.text;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wide subcategories and idempotent recollements of finite-dimensional path algebras"};
  app.set_version_flag("--version", std::string(widerec::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_flag("--json", g.json, "Print the machine-readable JSON report");
  app.add_flag("--dot", g.dot, "Print the correspondence as a DOT digraph (bijection)");
  app.add_option("--p", g.p, "Override the prime of the field")->check(CLI::Range(2, 97));
  app.add_flag("--timings", g.timings, "Include wall-clock timings in JSON reports");

  widerec::CommandOptions opt;
  std::string spec_path;

  auto* indec = app.add_subcommand("indec", "List the indecomposables of mod L, mod L/LeL and mod eLe");
  indec->add_option("spec", spec_path, "Problem JSON file")->required();

  auto* wide = app.add_subcommand("wide", "Enumerate wide subcategories of mod L");
  wide->add_option("spec", spec_path, "Problem JSON file")->required();
  wide->add_flag("--containing-image", opt.containing_image, "Only subcategories containing i_*(mod L/LeL)");

  auto* bij = app.add_subcommand("bijection", "Correspondence between wide subcategories of mod L and mod eLe");
  bij->add_option("spec", spec_path, "Problem JSON file")->required();

  auto* check = app.add_subcommand("check", "Run verifier suites");
  check->add_option("spec", spec_path, "Problem JSON file")->required();
  check->add_option("--theorem", opt.theorem, "Suite to run")
      ->check(CLI::IsMember({"2.4", "2.5", "3.1", "3.4", "3.5", "3.8", "all"}));

  app.add_subcommand("table1", "Correspondence table for A3 1<-2->3 with e = e2+e3");

  auto* fuzz = app.add_subcommand("fuzz", "Random battery of small representation-finite problems");
  fuzz->add_option("--seed", opt.seed, "Generator seed");
  fuzz->add_option("--count", opt.count, "Number of instances")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : widerec::kExitInputError;
  }

  if (g.p) opt.p = g.p;
  opt.timings = g.timings;

  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "table1") return emit(widerec::cmd_table1(opt), g);
    if (cmd == "fuzz") return emit(widerec::cmd_fuzz(opt), g);
    widerec::ProblemSpec spec = widerec::load_problem(spec_path);
    if (cmd == "indec") return emit(widerec::cmd_indec(spec, opt), g);
    if (cmd == "wide") return emit(widerec::cmd_wide(spec, opt), g);
    if (cmd == "bijection") return emit(widerec::cmd_bijection(spec, opt), g);
    return emit(widerec::cmd_check(spec, opt), g);
  } catch (const widerec::Error& e) {
    std::cerr << "widerec: " << e.what() << "\n";
    return widerec::exit_code_for(e.kind());
  }
}
