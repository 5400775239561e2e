// Problem files and the command layer behind the CLI.

#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "widerec/commands.hpp"

namespace widerec {
namespace {

ErrorKind kind_of_parse(const std::string& text) {
  try {
    parse_problem_text(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

const char* kA3 = R"({"field":{"p":2},"quiver":{"vertices":["1","2","3"],
  "arrows":[{"name":"a","from":"2","to":"1"},{"name":"b","from":"2","to":"3"}]},
  "relations":[],"idempotent":["2","3"],"bounds":{"vertex_dim":1,"total_dim":4}})";

TEST(Problem, ParsesTheDocumentedSchema) {
  ProblemSpec s = parse_problem_text(kA3);
  EXPECT_EQ(s.p, 2);
  EXPECT_EQ(s.quiver.vertex_count(), 3);
  ASSERT_EQ(s.quiver.arrow_count(), 2);
  EXPECT_EQ(s.quiver.arrows[0].source, 1);
  EXPECT_EQ(s.quiver.arrows[0].target, 0);
  EXPECT_EQ(s.idempotent, (std::vector<std::string>{"2", "3"}));
  EXPECT_EQ(s.catalog.vertex_dim, 1);
  EXPECT_EQ(s.catalog.total_dim, 4);
  EXPECT_EQ(s.wide.multiplicity, 2);  // default
}

TEST(Problem, DefaultsWithoutBounds) {
  ProblemSpec s = parse_problem_text(R"({"quiver":{"vertices":["x"]},"idempotent":["x"]})");
  EXPECT_EQ(s.p, 2);
  EXPECT_EQ(s.catalog.vertex_dim, CatalogBounds{}.vertex_dim);
  EXPECT_EQ(s.catalog.total_dim, CatalogBounds{}.total_dim);
}

TEST(Problem, RelationsAndCoefficients) {
  ProblemSpec s = parse_problem_text(R"({"field":{"p":3},
    "quiver":{"vertices":["1","2","3","4"],"arrows":[
      {"name":"a","from":"1","to":"2"},{"name":"b","from":"2","to":"4"},
      {"name":"c","from":"1","to":"3"},{"name":"d","from":"3","to":"4"}]},
    "relations":[[{"coeff":1,"path":["a","b"]},{"coeff":-1,"path":["c","d"]}]],
    "idempotent":["4"]})");
  ASSERT_EQ(s.relations.size(), 1u);
  EXPECT_EQ(s.relations[0][1].coeff, 2);
  EXPECT_EQ(build_algebra(s)->dim(), 9);
  EXPECT_EQ(build_algebra(s, 5)->field().p(), 5);
}

TEST(Problem, InputErrors) {
  EXPECT_EQ(kind_of_parse("{"), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of_parse("[]"), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of_parse(R"({"idempotent":["1"]})"), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of_parse(R"({"quiver":{"vertices":[]},"idempotent":[]})"), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of_parse(R"({"quiver":{"vertices":["1","1"]},"idempotent":["1"]})"), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of_parse(R"({"field":{"p":4},"quiver":{"vertices":["1"]},"idempotent":["1"]})"), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of_parse(R"({"quiver":{"vertices":["1"],"arrows":[{"name":"a","from":"1","to":"9"}]},"idempotent":["1"]})"),
            ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of_parse(R"({"quiver":{"vertices":["1","2"],"arrows":[{"name":"a","from":"1","to":"2"},
    {"name":"b","from":"2","to":"1"}]},"idempotent":["1"]})"),
            ErrorKind::CyclicQuiver);
  EXPECT_EQ(kind_of_parse(R"({"quiver":{"vertices":["1"]},"idempotent":["1"],"bounds":{"vertex_dim":0}})"),
            ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of_parse(R"({"quiver":{"vertices":["1"]},"idempotent":["1"],"bounds":{"hom_budget":-3}})"),
            ErrorKind::InvalidInput);
}

TEST(Problem, NonAdmissibleRelationSurfacesOnBuild) {
  ProblemSpec s = parse_problem_text(R"({"quiver":{"vertices":["1","2"],"arrows":[{"name":"a","from":"1","to":"2"}]},
    "relations":[[{"path":["a"]}]],"idempotent":["1"]})");
  try {
    build_algebra(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonAdmissibleRelations);
    EXPECT_EQ(exit_code_for(e.kind()), kExitInputError);
  }
}

TEST(Problem, JsonRoundTrip) {
  ProblemSpec s = parse_problem_text(kA3);
  ProblemSpec t = parse_problem(to_json(s));
  EXPECT_EQ(to_json(s), to_json(t));
  EXPECT_EQ(to_json(sink_source_problem())["idempotent"], to_json(s)["idempotent"]);
}

TEST(Problem, LoadMissingFile) {
  try {
    load_problem("/nonexistent/problem.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

TEST(Problem, EnvironmentBudgetOverrides) {
  ::setenv("WIDEREC_BUDGET", "17", 1);
  ProblemSpec s = parse_problem_text(R"({"quiver":{"vertices":["1"]},"idempotent":["1"],"bounds":{"hom_budget":99}})");
  ::unsetenv("WIDEREC_BUDGET");
  EXPECT_EQ(s.wide.budget.max_combinations, 17u);
  ProblemSpec t = parse_problem_text(R"({"quiver":{"vertices":["1"]},"idempotent":["1"],"bounds":{"hom_budget":99}})");
  EXPECT_EQ(t.wide.budget.max_combinations, 99u);
}

TEST(RandomProblem, RespectsGeneratorLimits) {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 200; ++k) {
    ProblemSpec s = random_problem(rng);
    EXPECT_LE(s.quiver.vertex_count(), 4);
    EXPECT_LE(s.quiver.arrow_count(), 4);
    EXPECT_TRUE(s.p == 2 || s.p == 3);
    EXPECT_FALSE(s.idempotent.empty());
    EXPECT_LT(static_cast<int>(s.idempotent.size()), s.quiver.vertex_count());
    EXPECT_NO_THROW(s.quiver.topological_order());
    EXPECT_NO_THROW(build_algebra(s));
  }
}

TEST(RandomProblem, SeedDeterminesSequence) {
  std::mt19937_64 a(9), b(9);
  for (int k = 0; k < 20; ++k) EXPECT_EQ(to_json(random_problem(a)), to_json(random_problem(b)));
}

// --- commands --------------------------------------------------------------

TEST(Commands, ExitCodeTable) {
  EXPECT_EQ(exit_code_for(ErrorKind::InvalidInput), 2);
  EXPECT_EQ(exit_code_for(ErrorKind::CyclicQuiver), 2);
  EXPECT_EQ(exit_code_for(ErrorKind::NotAdjointPair), 2);
  EXPECT_EQ(exit_code_for(ErrorKind::SearchBudgetExceeded), 3);
  EXPECT_EQ(exit_code_for(ErrorKind::TooManyIndecomposables), 3);
  EXPECT_EQ(exit_code_for(ErrorKind::OutOfCatalog), 3);
  EXPECT_EQ(exit_code_for(ErrorKind::ExactnessFailure), 1);
}

TEST(Commands, IndecCounts) {
  Report r = cmd_indec(sink_source_problem());
  EXPECT_EQ(r.results["lambda"].size(), 6u);
  EXPECT_EQ(r.results["quotient"].size(), 1u);
  EXPECT_EQ(r.results["corner"].size(), 3u);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.text.find("2/13"), std::string::npos);
}

TEST(Commands, IndecWithoutArrowsListsSimples) {
  ProblemSpec s = parse_problem_text(R"({"field":{"p":3},"quiver":{"vertices":["1","2","3"]},"idempotent":["1"]})");
  Report r = cmd_indec(s);
  EXPECT_EQ(r.results["lambda"].size(), 3u);
  EXPECT_EQ(r.results["corner"].size(), 1u);
  EXPECT_EQ(r.results["quotient"].size(), 2u);
}

TEST(Commands, WideContainingImage) {
  CommandOptions o;
  o.containing_image = true;
  Report r = cmd_wide(sink_source_problem(), o);
  EXPECT_EQ(r.results["count"], 5);
  EXPECT_TRUE(r.results["oracle_agrees"].get<bool>());
  Report all = cmd_wide(sink_source_problem());
  EXPECT_TRUE(all.results["oracle_agrees"].get<bool>());
  EXPECT_GT(all.results["count"].get<int>(), 5);
}

TEST(Commands, WideOneVertex) {
  ProblemSpec s = parse_problem_text(R"({"quiver":{"vertices":["1"]},"idempotent":["1"]})");
  EXPECT_EQ(cmd_wide(s).results["count"], 2);
}

TEST(Commands, FieldOverride) {
  CommandOptions o;
  o.p = 3;
  Report r = cmd_indec(sink_source_problem(), o);
  EXPECT_EQ(r.inputs["field"]["p"], 3);
  EXPECT_EQ(r.results["lambda"].size(), 6u);
}

TEST(Commands, BijectionAndDot) {
  Report r = cmd_bijection(sink_source_problem());
  EXPECT_TRUE(r.results["passed"].get<bool>());
  EXPECT_EQ(r.results["containing_count"], 5);
  EXPECT_EQ(r.results["corner_count"], 5);
  EXPECT_EQ(r.dot.rfind("digraph bijection {", 0), 0u);
  std::size_t edges = 0;
  for (std::size_t pos = 0; (pos = r.dot.find("->", pos)) != std::string::npos; ++pos) ++edges;
  EXPECT_EQ(edges, 5u);
}

TEST(Commands, CheckSelectors) {
  for (const char* t : {"2.4", "2.5", "3.1", "3.4", "3.5", "3.8", "all"}) {
    CommandOptions o;
    o.theorem = t;
    Report r = cmd_check(sink_source_problem(), o);
    EXPECT_EQ(r.exit_code, 0) << t << "\n" << r.text;
  }
  CommandOptions bad;
  bad.theorem = "9.9";
  EXPECT_THROW(cmd_check(sink_source_problem(), bad), Error);
}

TEST(Commands, TableLayout) {
  Report r = cmd_table1();
  EXPECT_EQ(r.exit_code, 0);
  ASSERT_EQ(r.results["rows"].size(), 5u);
  // largest subcategory first, {S1} with an empty image last
  EXPECT_EQ(r.results["rows"][0]["C"]["ids"].size(), 6u);
  EXPECT_EQ(r.results["rows"][4]["C"]["ids"].size(), 1u);
  EXPECT_TRUE(r.results["rows"][4]["j_upper"]["ids"].empty());
}

TEST(Commands, OutputIsDeterministic) {
  EXPECT_EQ(cmd_table1().to_json().dump(), cmd_table1().to_json().dump());
  EXPECT_EQ(cmd_wide(sink_source_problem()).text, cmd_wide(sink_source_problem()).text);
  CommandOptions o;
  o.count = 3;
  o.seed = 5;
  EXPECT_EQ(cmd_fuzz(o).to_json().dump(), cmd_fuzz(o).to_json().dump());
}

TEST(Commands, BudgetExhaustion) {
  ProblemSpec s = sink_source_problem();
  s.wide.budget.max_combinations = 1;
  try {
    cmd_wide(s);
    FAIL() << "expected a budget error";
  } catch (const Error& e) {
    EXPECT_EQ(exit_code_for(e.kind()), kExitBudget);
  }
}

TEST(Commands, SmallFuzzBattery) {
  CommandOptions o;
  o.seed = 7;
  o.count = 4;
  Report r = cmd_fuzz(o);
  EXPECT_EQ(r.results["failed"], 0) << r.text;
  EXPECT_EQ(r.results["instances"].size(), 4u);
}

}  // namespace
}  // namespace widerec
