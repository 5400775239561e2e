#pragma once

// Command implementations behind the widerec CLI. Each command returns a
// Report holding an ASCII rendering, a JSON rendering and an exit code, so the
// same code path serves the executable and the tests.

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "widerec/problem.hpp"
#include "widerec/recollement.hpp"
#include "widerec/theorems.hpp"
#include "widerec/wide.hpp"
#include "widerec/wide_fixpoint.hpp"

#ifndef WIDEREC_VERSION
#define WIDEREC_VERSION "0.1.0"
#endif

namespace widerec {

inline constexpr const char* kVersion = WIDEREC_VERSION;

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitInputError = 2, kExitBudget = 3 };

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput:
    case ErrorKind::CyclicQuiver:
    case ErrorKind::NonAdmissibleRelations:
    case ErrorKind::InvalidModule:
    case ErrorKind::NotAdjointPair:
      return kExitInputError;
    case ErrorKind::SearchBudgetExceeded:
    case ErrorKind::TooManyIndecomposables:
    case ErrorKind::OutOfCatalog:
      return kExitBudget;
    default:
      return kExitCheckFailed;
  }
}

struct CommandOptions {
  std::optional<int> p;          // overrides the field of the problem
  bool containing_image = false; // wide: only subcategories containing i_*(mod L')
  std::string theorem = "all";   // check: 2.4 | 2.5 | 3.1 | 3.4 | 3.5 | 3.8 | all
  std::uint64_t seed = 42;
  int count = 25;
  bool timings = false;
};

struct Report {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  std::string text;
  std::string dot;
  int exit_code = kExitOk;

  json to_json() const {
    json j{{"command", command}, {"version", kVersion}, {"inputs", inputs}, {"results", results}, {"exit_code", exit_code}};
    return j;
  }
};

namespace detail {

inline std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

/// "{2, 2/3}" style listing; the zero subcategory prints as 0.
inline std::string labels(const IsoCatalog& cat, const std::vector<int>& ids) {
  if (ids.empty()) return "0";
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? ", " : "") + cat.label(ids[i]);
  return s + "}";
}

inline json catalog_json(const IsoCatalog& cat) {
  json arr = json::array();
  for (int id = 0; id < cat.size(); ++id)
    arr.push_back({{"id", id}, {"dims", cat[id].dims()}, {"label", cat.label(id)}});
  return arr;
}

inline json subcat_json(const IsoCatalog& cat, const WideSubcat& s) {
  json lab = json::array();
  for (int id : s.ids) lab.push_back(cat.label(id));
  return {{"ids", s.ids}, {"labels", lab}};
}

inline void catalog_text(std::ostringstream& out, const std::string& title, const IsoCatalog& cat) {
  out << title << ": " << cat.size() << " indecomposable" << (cat.size() == 1 ? "" : "s") << "\n";
  for (int id = 0; id < cat.size(); ++id)
    out << "  " << pad(std::to_string(id), 4) << pad(dim_vector_string(cat[id].dims()), 14) << cat.label(id) << "\n";
}

struct Problem {
  ProblemSpec spec;
  std::unique_ptr<WideContext> ctx;
};

inline Problem open_problem(const ProblemSpec& spec, const CommandOptions& opt) {
  Problem pr{spec, nullptr};
  if (opt.p) pr.spec.p = *opt.p;
  AlgebraPtr alg = build_algebra(pr.spec);
  pr.ctx = std::make_unique<WideContext>(alg, build_idem(pr.spec), pr.spec.catalog, pr.spec.wide);
  return pr;
}

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

inline std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace detail

/// Catalogs of mod L, mod L/LeL and mod eLe.
inline Report cmd_indec(const ProblemSpec& spec, const CommandOptions& opt = {}) {
  detail::Stopwatch sw;
  auto pr = detail::open_problem(spec, opt);
  const auto& rec = pr.ctx->rec();
  Report r;
  r.command = "indec";
  r.inputs = to_json(pr.spec);
  std::ostringstream out;
  detail::catalog_text(out, "mod L", rec.catalog());
  detail::catalog_text(out, "mod L/LeL", rec.quotient_catalog());
  detail::catalog_text(out, "mod eLe", rec.corner_catalog());
  out << "i_*(mod L/LeL) = " << ids_string(rec.i_star_image_ids()) << "\n";
  r.results = {{"lambda", detail::catalog_json(rec.catalog())},
               {"quotient", detail::catalog_json(rec.quotient_catalog())},
               {"corner", detail::catalog_json(rec.corner_catalog())},
               {"i_star_image", rec.i_star_image_ids()},
               {"algebra_dims", {rec.lambda()->dim(), rec.quotient()->dim(), rec.corner()->dim()}}};
  if (opt.timings) r.results["seconds"] = sw.seconds();
  r.text = out.str();
  return r;
}

/// Wide subcategories of mod L (optionally only those containing i_*(mod L'))
/// with their images under j^*, cross-checked against the fixpoint oracle.
inline Report cmd_wide(const ProblemSpec& spec, const CommandOptions& opt = {}) {
  detail::Stopwatch sw;
  auto pr = detail::open_problem(spec, opt);
  const auto& ctx = *pr.ctx;
  const auto& cat = ctx.rec().catalog();
  const auto& ccat = ctx.rec().corner_catalog();
  const std::vector<int> base = opt.containing_image ? ctx.rec().i_star_image_ids() : std::vector<int>{};
  auto rows = ctx.lambda().enumerate_wide_containing(base);
  FixpointOracle oracle(cat, pr.spec.wide);
  const bool agree = oracle.enumerate_wide(base) == rows;

  Report r;
  r.command = "wide";
  r.inputs = to_json(pr.spec);
  r.inputs["containing_image"] = opt.containing_image;
  std::ostringstream out;
  out << rows.size() << " wide subcategor" << (rows.size() == 1 ? "y" : "ies") << " of mod L"
      << (opt.containing_image ? " containing i_*(mod L/LeL)" : "") << "\n";
  json arr = json::array();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    WideSubcat w = restrict_to_corner(ctx, rows[k]);
    out << "  " << detail::pad(std::to_string(k), 4) << detail::pad(detail::labels(cat, rows[k].ids), 36)
        << "j^* -> " << detail::labels(ccat, w.ids) << "\n";
    arr.push_back({{"subcategory", detail::subcat_json(cat, rows[k])}, {"j_upper", detail::subcat_json(ccat, w)}});
  }
  out << "fixpoint oracle: " << (agree ? "agrees" : "DISAGREES") << "\n";
  r.results = {{"count", rows.size()}, {"rows", arr}, {"oracle_agrees", agree}};
  if (opt.timings) r.results["seconds"] = sw.seconds();
  r.text = out.str();
  r.exit_code = agree ? kExitOk : kExitCheckFailed;
  return r;
}

/// The correspondence between wide subcategories containing i_*(mod L') and
/// wide subcategories of mod eLe, with round-trip verdicts.
inline Report cmd_bijection(const ProblemSpec& spec, const CommandOptions& opt = {}) {
  detail::Stopwatch sw;
  auto pr = detail::open_problem(spec, opt);
  const auto& ctx = *pr.ctx;
  const auto& cat = ctx.rec().catalog();
  const auto& ccat = ctx.rec().corner_catalog();
  BijectionReport b = check_bijection(ctx);

  Report r;
  r.command = "bijection";
  r.inputs = to_json(pr.spec);
  std::ostringstream out, dot;
  out << b.containing.size() << " wide subcategories of mod L containing i_*(mod L/LeL), " << b.corner_wide.size()
      << " wide subcategories of mod eLe\n";
  json fwd = json::array(), back = json::array();
  dot << "digraph bijection {\n  rankdir=LR;\n";
  for (std::size_t k = 0; k < b.containing.size(); ++k) {
    out << "  C" << detail::pad(std::to_string(k), 3) << detail::pad(detail::labels(cat, b.containing[k].ids), 36)
        << "-> " << detail::labels(ccat, b.images[k].ids) << "\n";
    fwd.push_back({{"source", detail::subcat_json(cat, b.containing[k])}, {"image", detail::subcat_json(ccat, b.images[k])}});
    dot << "  \"C" << k << "\" [label=\"" << detail::labels(cat, b.containing[k].ids) << "\"];\n";
  }
  for (std::size_t k = 0; k < b.corner_wide.size(); ++k) {
    back.push_back({{"source", detail::subcat_json(ccat, b.corner_wide[k])}, {"preimage", detail::subcat_json(cat, b.preimages[k])}});
    dot << "  \"W" << k << "\" [shape=box, label=\"" << detail::labels(ccat, b.corner_wide[k].ids) << "\"];\n";
  }
  for (std::size_t k = 0; k < b.containing.size(); ++k)
    for (std::size_t m = 0; m < b.corner_wide.size(); ++m)
      if (b.images[k] == b.corner_wide[m]) dot << "  \"C" << k << "\" -> \"W" << m << "\";\n";
  dot << "}\n";
  for (const auto& f : b.failures) out << "  failure: " << f << "\n";
  out << "round trip: " << detail::verdict(b.passed()) << "\n";
  r.results = {{"containing_count", b.containing.size()},
               {"corner_count", b.corner_wide.size()},
               {"forward", fwd},
               {"backward", back},
               {"failures", b.failures},
               {"passed", b.passed()}};
  if (opt.timings) r.results["seconds"] = sw.seconds();
  r.text = out.str();
  r.dot = dot.str();
  r.exit_code = b.passed() ? kExitOk : kExitCheckFailed;
  return r;
}

/// Runs the selected verifier suites and collects one item per statement
/// checked.
inline CheckReport run_checks(const WideContext& ctx, const std::string& theorem) {
  static const std::vector<std::string> known{"2.4", "2.5", "3.1", "3.4", "3.5", "3.8", "all"};
  if (std::find(known.begin(), known.end(), theorem) == known.end())
    fail(ErrorKind::InvalidInput, "unknown theorem selector " + theorem);
  auto want = [&](const char* t) { return theorem == "all" || theorem == t; };
  CheckReport rep;
  if (want("2.4") || want("2.5")) {
    for (auto& it : ctx.rec().check_recollement_axioms().items)
      if (want(it.group.c_str())) rep.items.push_back(std::move(it));
  }
  const WideSubcat base = ctx.base();
  std::vector<WideSubcat> containing;
  if (want("3.1") || want("3.8")) containing = ctx.lambda().enumerate_wide_containing(base.ids);
  if (want("3.1"))
    for (const auto& s : containing) rep.items.push_back(check_corner_adjoints_return(ctx, s));
  if (want("3.4")) {
    BijectionReport b = check_bijection(ctx);
    CheckItem it{"wide_{i_*(mod L')}(mod L) <-> wide(mod eLe) round trip", "3.4", b.passed(), ""};
    it.detail = std::to_string(b.containing.size()) + " <-> " + std::to_string(b.corner_wide.size());
    if (!b.failures.empty()) it.detail += ": " + b.failures.front();
    rep.items.push_back(std::move(it));
  }
  if (want("3.5")) {
    for (const auto& s : ctx.lambda().enumerate_wide()) {
      QuotientImageReport q = check_quotient_images(ctx, s);
      CheckItem it{"i^*(C), i^!(C) wide for C = " + ids_string(s.ids), "3.5", q.passed(), ""};
      auto part = [](bool hyp, bool wide, const WideSubcat& img) {
        if (!hyp) return std::string("hypothesis not met");
        return ids_string(img.ids) + (wide ? " wide" : " NOT wide");
      };
      it.detail = "i^*: " + part(q.upper_hypothesis, q.upper_wide, q.upper) + "; i^!: " + part(q.shriek_hypothesis, q.shriek_wide, q.shriek);
      rep.items.push_back(std::move(it));
    }
  }
  if (want("3.8"))
    for (const auto& s : containing)
      for (auto& it : check_induced_recollement(ctx, s).items) rep.items.push_back(std::move(it));
  return rep;
}

inline Report cmd_check(const ProblemSpec& spec, const CommandOptions& opt = {}) {
  detail::Stopwatch sw;
  auto pr = detail::open_problem(spec, opt);
  CheckReport rep = run_checks(*pr.ctx, opt.theorem);
  Report r;
  r.command = "check";
  r.inputs = to_json(pr.spec);
  r.inputs["theorem"] = opt.theorem;
  std::ostringstream out;
  json items = json::array();
  int failed = 0;
  for (const auto& it : rep.items) {
    out << detail::verdict(it.passed) << "  [" << it.group << "] " << it.name;
    if (!it.detail.empty()) out << "  (" << it.detail << ")";
    out << "\n";
    items.push_back({{"name", it.name}, {"group", it.group}, {"passed", it.passed}, {"detail", it.detail}});
    if (!it.passed) ++failed;
  }
  out << rep.items.size() << " checks, " << failed << " failed\n";
  r.results = {{"items", items}, {"failed", failed}, {"passed", failed == 0}};
  if (opt.timings) r.results["seconds"] = sw.seconds();
  r.text = out.str();
  r.exit_code = failed == 0 ? kExitOk : kExitCheckFailed;
  return r;
}

/// The five-row correspondence for A3 1 <- 2 -> 3 with e = e2 + e3.
inline Report cmd_table1(const CommandOptions& opt = {}) {
  detail::Stopwatch sw;
  CommandOptions o = opt;
  o.p.reset();
  auto pr = detail::open_problem(sink_source_problem(), o);
  const auto& ctx = *pr.ctx;
  const auto& cat = ctx.rec().catalog();
  const auto& ccat = ctx.rec().corner_catalog();
  BijectionReport b = check_bijection(ctx);
  FixpointOracle oracle(cat, pr.spec.wide);
  const bool agree = oracle.enumerate_wide(ctx.rec().i_star_image_ids()) == b.containing;
  // Table order: largest subcategory first.
  std::vector<std::size_t> order(b.containing.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = order.size() - 1 - k;

  Report r;
  r.command = "table1";
  r.inputs = to_json(pr.spec);
  std::ostringstream out;
  out << detail::pad("C", 36) << "j^*(C)\n";
  json rows = json::array();
  for (std::size_t k : order) {
    out << detail::pad(detail::labels(cat, b.containing[k].ids), 36) << detail::labels(ccat, b.images[k].ids) << "\n";
    rows.push_back({{"C", detail::subcat_json(cat, b.containing[k])}, {"j_upper", detail::subcat_json(ccat, b.images[k])}});
  }
  const bool ok = b.passed() && agree;
  out << b.containing.size() << " rows; round trip " << detail::verdict(b.passed()) << "; fixpoint oracle "
      << (agree ? "agrees" : "DISAGREES") << "\n";
  r.results = {{"rows", rows}, {"count", b.containing.size()}, {"round_trip", b.passed()}, {"oracle_agrees", agree}};
  if (opt.timings) r.results["seconds"] = sw.seconds();
  r.text = out.str();
  r.exit_code = ok ? kExitOk : kExitCheckFailed;
  return r;
}

struct FuzzOutcome {
  ProblemSpec spec;
  int catalog_sizes[3] = {0, 0, 0};
  std::size_t wide_count = 0;
  bool axioms = false, corner_adjoints = false, bijection = false, quotient_images = false, induced = false, oracle = false;
  std::string skipped;  // nonempty when an instance exceeded a budget
  std::vector<std::string> failures;
  bool passed() const { return skipped.empty() && failures.empty(); }
};

inline FuzzOutcome run_fuzz_instance(const ProblemSpec& spec) {
  FuzzOutcome o;
  o.spec = spec;
  try {
    WideContext ctx(build_algebra(spec), build_idem(spec), spec.catalog, spec.wide);
    const auto& rec = ctx.rec();
    o.catalog_sizes[0] = rec.catalog().size();
    o.catalog_sizes[1] = rec.quotient_catalog().size();
    o.catalog_sizes[2] = rec.corner_catalog().size();
    o.axioms = rec.check_recollement_axioms().passed();
    if (!o.axioms) o.failures.push_back("recollement axioms");
    auto all = ctx.lambda().enumerate_wide();
    o.wide_count = all.size();
    o.oracle = FixpointOracle(rec.catalog(), spec.wide).enumerate_wide() == all;
    if (!o.oracle) o.failures.push_back("fixpoint oracle disagrees");
    BijectionReport b = check_bijection(ctx);
    o.bijection = b.passed();
    for (const auto& f : b.failures) o.failures.push_back(f);
    o.corner_adjoints = o.induced = true;
    for (const auto& s : b.containing) {
      if (!check_corner_adjoints_return(ctx, s).passed) {
        o.corner_adjoints = false;
        o.failures.push_back("j_*j^*, j_!j^* leave " + ids_string(s.ids));
      }
      for (const auto& it : check_induced_recollement(ctx, s).items)
        if (!it.passed) {
          o.induced = false;
          o.failures.push_back(it.name + ": " + it.detail);
        }
    }
    o.quotient_images = true;
    for (const auto& s : all)
      if (!check_quotient_images(ctx, s).passed()) {
        o.quotient_images = false;
        o.failures.push_back("i^*/i^! image of " + ids_string(s.ids) + " not wide");
      }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SearchBudgetExceeded || e.kind() == ErrorKind::TooManyIndecomposables) o.skipped = e.detail();
    else o.failures.push_back(e.what());
  }
  return o;
}

/// Random battery: count problems drawn from a generator seeded with seed.
inline Report cmd_fuzz(const CommandOptions& opt = {}) {
  detail::Stopwatch sw;
  std::mt19937_64 rng(opt.seed);
  Report r;
  r.command = "fuzz";
  r.inputs = {{"seed", opt.seed}, {"count", opt.count}};
  std::ostringstream out;
  json arr = json::array();
  int failed = 0, skipped = 0;
  for (int k = 0; k < opt.count; ++k) {
    ProblemSpec spec = random_problem(rng);
    if (opt.p) spec.p = *opt.p;
    FuzzOutcome o = run_fuzz_instance(spec);
    if (!o.skipped.empty()) ++skipped;
    else if (!o.passed()) ++failed;
    std::string idem;
    for (const auto& v : spec.idempotent) idem += (idem.empty() ? "" : "+") + ("e" + v);
    out << detail::pad(std::to_string(k), 4) << detail::pad(spec.name, 22) << "p=" << spec.p << "  e=" << detail::pad(idem, 12)
        << "catalogs " << detail::pad(std::to_string(o.catalog_sizes[0]) + "/" + std::to_string(o.catalog_sizes[1]) + "/" +
                                          std::to_string(o.catalog_sizes[2]), 9)
        << "wide " << detail::pad(std::to_string(o.wide_count), 4);
    if (!o.skipped.empty()) out << "SKIPPED (" << o.skipped << ")";
    else out << detail::verdict(o.passed());
    out << "\n";
    for (const auto& f : o.failures) out << "      " << f << "\n";
    arr.push_back({{"spec", to_json(spec)},
                   {"catalog_sizes", {o.catalog_sizes[0], o.catalog_sizes[1], o.catalog_sizes[2]}},
                   {"wide_count", o.wide_count},
                   {"axioms", o.axioms},
                   {"corner_adjoints", o.corner_adjoints},
                   {"bijection", o.bijection},
                   {"quotient_images", o.quotient_images},
                   {"induced_recollement", o.induced},
                   {"oracle", o.oracle},
                   {"skipped", o.skipped},
                   {"failures", o.failures}});
  }
  out << opt.count << " instances, " << failed << " failed, " << skipped << " skipped\n";
  r.results = {{"instances", arr}, {"failed", failed}, {"skipped", skipped}};
  if (opt.timings) r.results["seconds"] = sw.seconds();
  r.text = out.str();
  r.exit_code = failed ? kExitCheckFailed : (skipped ? kExitBudget : kExitOk);
  return r;
}

}  // namespace widerec
