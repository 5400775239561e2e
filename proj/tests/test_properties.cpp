// Randomised properties over generated problems and modules.

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "widerec/commands.hpp"

namespace widerec {
namespace {

using F = FunctorTag;

class RandomProblems : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override {
    std::mt19937_64 rng(1000 + GetParam());
    spec_ = random_problem(rng);
    rec_ = std::make_unique<Recollement>(build_algebra(spec_), build_idem(spec_), spec_.catalog, spec_.wide.budget);
  }
  ProblemSpec spec_;
  std::unique_ptr<Recollement> rec_;
};

TEST_P(RandomProblems, AdjunctionHomDimensions) {
  const auto& r = *rec_;
  for (const auto& m : r.catalog().entries()) {
    for (const auto& x : r.quotient_catalog().entries()) {
      EXPECT_EQ(hom_dim(r.i_upper(m), x), hom_dim(m, r.i_star(x)));
      EXPECT_EQ(hom_dim(r.i_star(x), m), hom_dim(x, r.i_shriek(m)));
    }
    for (const auto& n : r.corner_catalog().entries()) {
      EXPECT_EQ(hom_dim(r.j_shriek(n), m), hom_dim(n, r.j_upper(m)));
      EXPECT_EQ(hom_dim(r.j_upper(m), n), hom_dim(m, r.j_lower(n)));
    }
  }
}

TEST_P(RandomProblems, EmbeddingsAreFullyFaithful) {
  const auto& r = *rec_;
  for (const auto& x : r.quotient_catalog().entries())
    for (const auto& y : r.quotient_catalog().entries()) EXPECT_TRUE(r.fully_faithful_on(F::IStar, x, y));
  for (const auto& x : r.corner_catalog().entries())
    for (const auto& y : r.corner_catalog().entries()) {
      EXPECT_TRUE(r.fully_faithful_on(F::JShriek, x, y));
      EXPECT_TRUE(r.fully_faithful_on(F::JLower, x, y));
    }
}

TEST_P(RandomProblems, JUpperIsExact) {
  const auto& r = *rec_;
  for (const auto& x : r.catalog().entries())
    for (const auto& y : r.catalog().entries()) {
      std::string why;
      EXPECT_TRUE(r.preserves_exactness_on(F::JUpper, x, y, &why)) << why;
    }
}

TEST_P(RandomProblems, FourTermSequences) {
  for (const auto& m : rec_->catalog().entries()) EXPECT_NO_THROW(rec_->four_term_sequences(m));
}

TEST_P(RandomProblems, DecomposeSumsOfPairs) {
  const auto& cat = rec_->catalog();
  for (int a = 0; a < cat.size(); ++a)
    for (int b = a; b < cat.size(); ++b) EXPECT_EQ(decompose(cat, catalog_sum(cat, {a, b})), (std::vector<int>{a, b}));
}

TEST_P(RandomProblems, CatalogEntriesAreDistinctIndecomposables) {
  const auto& cat = rec_->catalog();
  for (int i = 0; i < cat.size(); ++i) {
    EXPECT_TRUE(cat[i].satisfies_relations());
    EXPECT_TRUE(is_indecomposable(cat[i]));
    for (int j = 0; j < i; ++j)
      if (cat[i].dims() == cat[j].dims()) EXPECT_FALSE(is_isomorphic(cat[i], cat[j]));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomProblems, ::testing::Range(0, 12));

TEST(RandomModules, DecomposeReassembles) {
  // Random representations of A3 1 <- 2 -> 3 over GF(3) with dims up to 2.
  auto alg = testing::a3_sink_source(3);
  auto cat = enumerate_catalog(alg, {2, 6});
  std::mt19937_64 rng(99);
  for (int t = 0; t < 60; ++t) {
    std::vector<int> dims{static_cast<int>(rng() % 3), static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)};
    std::vector<Mat> acts{testing::random_mat(rng, dims[0], dims[1], alg->field()),
                          testing::random_mat(rng, dims[2], dims[1], alg->field())};
    QModule m(alg, dims, acts);
    auto ids = decompose(cat, m);
    QModule back = catalog_sum(cat, ids);
    EXPECT_EQ(back.dims(), m.dims());
    EXPECT_TRUE(is_isomorphic(back, m));
  }
}

TEST(RandomModules, KernelCokernelDimensions) {
  auto alg = testing::a3_sink_source(2);
  auto cat = enumerate_catalog(alg, {1, 4});
  for (int x = 0; x < cat.size(); ++x)
    for (int y = 0; y < cat.size(); ++y)
      for (const auto& f : hom_space(cat[x], cat[y])) {
        SubObject k = kernel(f), im = image(f);
        QuotientObject c = cokernel(f);
        for (int v = 0; v < 3; ++v) {
          EXPECT_EQ(k.object.dim(v) + im.object.dim(v), cat[x].dim(v));
          EXPECT_EQ(c.object.dim(v) + im.object.dim(v), cat[y].dim(v));
        }
        EXPECT_TRUE(compose(f, k.inclusion).is_zero());
        EXPECT_TRUE(compose(c.projection, f).is_zero());
      }
}

TEST(RandomMatrices, LinearAlgebraLaws) {
  std::mt19937_64 rng(4242);
  for (int p : {2, 3, 5, 7}) {
    Field f(p);
    for (int t = 0; t < 300; ++t) {
      int r = static_cast<int>(rng() % 6), c = static_cast<int>(rng() % 6);
      Mat m = testing::random_mat(rng, r, c, f);
      Rref rr = rref(m);
      EXPECT_EQ(rr.rank() + static_cast<int>(kernel_basis(m).size()), c);
      EXPECT_EQ(rref(rr.reduced).reduced, rr.reduced);
      EXPECT_EQ(rank(m), rank(m.transpose()));
      Vec x0(c);
      for (auto& v : x0) v = static_cast<int>(rng() % p);
      auto x = solve(m, m * x0);
      ASSERT_TRUE(x);
      EXPECT_EQ(m * *x, m * x0);
    }
  }
}

}  // namespace
}  // namespace widerec
