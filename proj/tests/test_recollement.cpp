// The six functors, their adjunctions, wide subcategories and the
// correspondence with the corner algebra. Example catalog ids for A3 1<-2->3
// with bounds (1,4): 0 = S3, 1 = S2, 2 = S1, 3 = 2/3, 4 = 2/1, 5 = 2/13.
// Corner catalog: 0 = S3, 1 = S2, 2 = 2/3.

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support.hpp"
#include "widerec/theorems.hpp"
#include "widerec/wide_fixpoint.hpp"

namespace widerec {
namespace {

using F = FunctorTag;
using testing::a3_sink_source;
using testing::algebra;

constexpr int kS3 = 0, kS2 = 1, kS1 = 2, k23 = 3, k21 = 4, kP2 = 5;

class SinkSource : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { ctx_ = new WideContext(a3_sink_source(), Idem{{1, 2}}, {1, 4}); }
  static void TearDownTestSuite() {
    delete ctx_;
    ctx_ = nullptr;
  }
  const WideContext& ctx() const { return *ctx_; }
  const Recollement& rec() const { return ctx_->rec(); }
  const QModule& lam(int id) const { return rec().catalog()[id]; }
  WideSubcat c(std::vector<int> ids) const { return ctx().lambda().make(std::move(ids)); }
  WideSubcat w(std::vector<int> ids) const { return ctx().corner().make(std::move(ids)); }

  static WideContext* ctx_;
};
WideContext* SinkSource::ctx_ = nullptr;

// --- functors on objects ---------------------------------------------------

TEST_F(SinkSource, CatalogLabels) {
  std::vector<std::string> want{"3", "2", "1", "2/3", "2/1", "2/13"};
  for (int i = 0; i < 6; ++i) EXPECT_EQ(rec().catalog().label(i), want[i]);
  EXPECT_EQ(rec().quotient_catalog().size(), 1);
  EXPECT_EQ(rec().corner_catalog().size(), 3);
  EXPECT_EQ(rec().i_star_image_ids(), (std::vector<int>{kS1}));
}

TEST_F(SinkSource, UpperAndShriekOfProjective) {
  // i^* keeps the top away from e, i^! the socle away from e.
  EXPECT_TRUE(rec().i_upper(lam(kP2)).is_zero());
  EXPECT_EQ(rec().i_shriek(lam(kP2)).dims(), (std::vector<int>{1}));
  EXPECT_EQ(rec().i_upper(lam(k21)).dims(), (std::vector<int>{0}));
  EXPECT_EQ(rec().i_shriek(lam(k21)).dims(), (std::vector<int>{1}));
  EXPECT_EQ(rec().i_upper(lam(kS1)).dims(), (std::vector<int>{1}));
  EXPECT_TRUE(rec().i_shriek(lam(k23)).is_zero());
}

TEST_F(SinkSource, JUpperRestricts) {
  for (int id = 0; id < 6; ++id) {
    QModule n = rec().j_upper(lam(id));
    EXPECT_EQ(n.dims(), (std::vector<int>{lam(id).dim(1), lam(id).dim(2)}));
  }
  EXPECT_TRUE(rec().j_upper(lam(kS1)).is_zero());
}

TEST_F(SinkSource, JShriekAndJLowerOnCorner) {
  const auto& cc = rec().corner_catalog();
  // j_! keeps projectives, j_* keeps injectives.
  EXPECT_TRUE(is_isomorphic(rec().j_shriek(cc[2]), lam(kP2)));
  EXPECT_TRUE(is_isomorphic(rec().j_shriek(cc[0]), lam(kS3)));
  EXPECT_TRUE(is_isomorphic(rec().j_lower(cc[1]), lam(kS2)));
  EXPECT_TRUE(is_isomorphic(rec().j_lower(cc[2]), lam(k23)));
  // j_!(S2) = coker(P3 -> P2), j_*(S3) = ker(I3 -> I2).
  EXPECT_TRUE(is_isomorphic(rec().j_shriek(cc[1]), lam(k21)));
  EXPECT_TRUE(is_isomorphic(rec().j_lower(cc[0]), lam(kS3)));
}

TEST_F(SinkSource, CompositesWithInclusionsAreIdentity) {
  for (const auto& n : rec().corner_catalog().entries()) {
    EXPECT_TRUE(is_isomorphic(rec().j_upper(rec().j_shriek(n)), n));
    EXPECT_TRUE(is_isomorphic(rec().j_upper(rec().j_lower(n)), n));
  }
  for (const auto& x : rec().quotient_catalog().entries()) {
    EXPECT_TRUE(is_isomorphic(rec().i_upper(rec().i_star(x)), x));
    EXPECT_TRUE(is_isomorphic(rec().i_shriek(rec().i_star(x)), x));
  }
}

TEST_F(SinkSource, AdjunctionsMatchHomDimensions) {
  // Independent of the unit maps: only dimensions of hom spaces.
  const auto& cl = rec().catalog().entries();
  for (const auto& m : cl) {
    for (const auto& x : rec().quotient_catalog().entries()) {
      EXPECT_EQ(hom_dim(rec().i_upper(m), x), hom_dim(m, rec().i_star(x)));
      EXPECT_EQ(hom_dim(rec().i_star(x), m), hom_dim(x, rec().i_shriek(m)));
    }
    for (const auto& n : rec().corner_catalog().entries()) {
      EXPECT_EQ(hom_dim(rec().j_shriek(n), m), hom_dim(n, rec().j_upper(m)));
      EXPECT_EQ(hom_dim(rec().j_upper(m), n), hom_dim(m, rec().j_lower(n)));
    }
  }
}

TEST_F(SinkSource, AdjunctionBijectionsInvertible) {
  const auto& cl = rec().catalog().entries();
  const auto& cq = rec().quotient_catalog().entries();
  const auto& cc = rec().corner_catalog().entries();
  for (const auto& m : cl)
    for (const auto& x : cq) {
      EXPECT_TRUE(rec().adjunction_bijection(F::IUpper, F::IStar, m, x).invertible);
      EXPECT_TRUE(rec().adjunction_bijection(F::IStar, F::IShriek, x, m).invertible);
    }
  for (const auto& m : cl)
    for (const auto& n : cc) {
      EXPECT_TRUE(rec().adjunction_bijection(F::JShriek, F::JUpper, n, m).invertible);
      EXPECT_TRUE(rec().adjunction_bijection(F::JUpper, F::JLower, m, n).invertible);
      EXPECT_TRUE(rec().adjunction_natural(F::JUpper, F::JLower, m, n, cl, cc));
    }
}

TEST_F(SinkSource, NotAdjointPairRejected) {
  EXPECT_FALSE(Recollement::is_adjoint_pair(F::IStar, F::IUpper));
  EXPECT_FALSE(Recollement::is_adjoint_pair(F::JLower, F::JUpper));
  try {
    rec().adjunction_bijection(F::JUpper, F::JShriek, lam(kP2), rec().corner_catalog()[0]);
    FAIL() << "expected NotAdjointPair";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAdjointPair);
  }
}

TEST_F(SinkSource, FunctorsOnMapsPreserveComposition) {
  const auto& cl = rec().catalog().entries();
  for (F t : {F::IUpper, F::IShriek, F::JUpper})
    for (const auto& a : cl)
      for (const auto& b : cl)
        for (const auto& cc : cl)
          for (const auto& f : hom_space(a, b))
            for (const auto& g : hom_space(b, cc))
              EXPECT_EQ(rec().apply(t, compose(g, f)), compose(rec().apply(t, g), rec().apply(t, f))) << to_string(t);
}

TEST_F(SinkSource, FourTermSequencesExact) {
  for (int id = 0; id < 6; ++id) {
    FourTermSequences s;
    ASSERT_NO_THROW(s = rec().four_term_sequences(lam(id))) << id;
    EXPECT_TRUE(is_exact(s.counit_side));
    EXPECT_TRUE(is_exact(s.unit_side));
  }
  // For P2 the counit j_!j^*P2 -> P2 is an isomorphism and i_*i^*P2 = 0.
  auto s = rec().four_term_sequences(lam(kP2));
  EXPECT_TRUE(s.counit_side.maps[1].is_isomorphism());
  EXPECT_EQ(decompose(rec().catalog(), s.counit_side.maps[1].source()), (std::vector<int>{kP2}));
}

TEST_F(SinkSource, ImageOfIStarIsKernelOfJUpper) {
  for (int id = 0; id < 6; ++id) EXPECT_EQ(rec().j_upper(lam(id)).is_zero(), id == kS1);
}

TEST_F(SinkSource, AxiomReportPasses) {
  CheckReport r = rec().check_recollement_axioms();
  for (const auto& it : r.items) EXPECT_TRUE(it.passed) << it.name << ": " << it.detail;
  std::set<std::string> groups;
  for (const auto& it : r.items) groups.insert(it.group);
  EXPECT_EQ(groups, (std::set<std::string>{"2.4", "2.5"}));
}

TEST(IsExact, DetectsBrokenSequence) {
  auto alg = a3_sink_source();
  auto s1 = testing::rep(alg, {1, 0, 0}, {{}, {}});
  ChainSequence bad{{ModuleMap::identity(s1), ModuleMap::identity(s1)}};
  std::string why;
  EXPECT_FALSE(is_exact(bad, &why));
  EXPECT_FALSE(why.empty());
}

TEST(Degenerate, IdempotentCoveringEverything) {
  auto alg = a3_sink_source();
  Recollement rec(alg, Idem{{0, 1, 2}}, {1, 4});
  EXPECT_TRUE(rec.degenerate());
  EXPECT_EQ(rec.quotient_catalog().size(), 0);
  EXPECT_EQ(rec.corner_catalog().size(), 6);
  EXPECT_TRUE(rec.check_recollement_axioms().passed());
  for (const auto& m : rec.catalog().entries()) {
    EXPECT_TRUE(rec.i_upper(m).is_zero());
    EXPECT_EQ(rec.j_upper(m).dims(), m.dims());
  }
}

TEST(Recollement, OutOfRangeIdempotent) {
  EXPECT_THROW(Recollement(a3_sink_source(), Idem{{5}}, {1, 4}), Error);
}

TEST(Recollement, OtherProblemsPassAxioms) {
  struct Case {
    AlgebraPtr alg;
    Idem e;
    CatalogBounds b;
  };
  auto lin = testing::quiver(3, {{0, 1}, {1, 2}});
  std::vector<Case> cases{
      {algebra(3, {{0, 1}, {1, 2}}), Idem{{0, 2}}, {1, 3}},
      {path_algebra(lin, {testing::zero_path(lin, 0, 1)}, Field(3)), Idem{{1}}, {1, 3}},
      {algebra(4, {{0, 3}, {1, 3}, {2, 3}}), Idem{{0, 1, 2}}, {2, 6}},
  };
  for (const auto& c : cases) {
    Recollement rec(c.alg, c.e, c.b);
    CheckReport r = rec.check_recollement_axioms();
    for (const auto& it : r.items) EXPECT_TRUE(it.passed) << it.name << ": " << it.detail;
  }
}

// --- wide subcategories ----------------------------------------------------

TEST_F(SinkSource, TrivialWideSubcategories) {
  const auto& eng = ctx().lambda();
  EXPECT_TRUE(eng.is_wide(eng.whole()));
  EXPECT_TRUE(eng.is_wide(eng.zero()));
  EXPECT_TRUE(eng.is_wide(c({kS1})));
}

TEST_F(SinkSource, SimpleAndProjectiveIsNotWide) {
  // Hom(P2, S1) = 0, so no kernel leaves {S1, P2}; the cokernel of S1 -> P2
  // is 2/3, which does.
  const auto& eng = ctx().lambda();
  auto s = c({kS1, kP2});
  EXPECT_TRUE(eng.closed_under_kernels(s));
  EXPECT_FALSE(eng.closed_under_cokernels(s));
  EXPECT_FALSE(eng.is_wide(s));
  auto why = eng.violation(s);
  ASSERT_TRUE(why);
  EXPECT_NE(why->find("cokernel"), std::string::npos);
  EXPECT_EQ(hom_dim(lam(kP2), lam(kS1)), 0);
}

TEST_F(SinkSource, ExtensionClosure) {
  const auto& eng = ctx().lambda();
  EXPECT_TRUE(eng.closed_under_extensions(c({kS1, kS3})));
  EXPECT_TRUE(eng.is_wide(c({kS1, kS3})));
  EXPECT_FALSE(eng.closed_under_extensions(c({kS1, kS2})));  // 2/1
  const auto& corner = ctx().corner();
  EXPECT_FALSE(corner.closed_under_extensions(w({0, 1})));
  EXPECT_TRUE(corner.closed_under_extensions(corner.whole()));
}

TEST_F(SinkSource, ContainsChecksEverySummand) {
  const auto& eng = ctx().lambda();
  auto s = c({kS1});
  EXPECT_TRUE(eng.contains(s, QModule::zero(rec().lambda())));
  EXPECT_TRUE(eng.contains(s, lam(kS1)));
  std::vector<QModule> parts{lam(kS1), lam(kS2)};
  EXPECT_FALSE(eng.contains(s, direct_sum(parts)));
  EXPECT_THROW(eng.make({6}), Error);
}

TEST_F(SinkSource, ContainingImageGivesFiveRows) {
  auto rows = ctx().lambda().enumerate_wide_containing({kS1});
  std::set<std::vector<int>> got;
  for (const auto& r : rows) got.insert(r.ids);
  std::set<std::vector<int>> want{{kS1}, {kS3, kS1}, {kS2, kS1, k21}, {kS1, k23, kP2}, {0, 1, 2, 3, 4, 5}};
  EXPECT_EQ(got, want);
}

TEST_F(SinkSource, CornerHasFiveWideSubcategories) {
  auto all = ctx().corner().enumerate_wide();
  EXPECT_EQ(all.size(), 5u);
  FixpointOracle oracle(rec().corner_catalog(), ctx().corner().bounds());
  EXPECT_EQ(oracle.enumerate_wide().size(), 5u);
}

TEST_F(SinkSource, EngineAgreesWithFixpointOracle) {
  auto a = ctx().lambda().enumerate_wide();
  FixpointOracle oracle(rec().catalog(), ctx().lambda().bounds());
  auto b = oracle.enumerate_wide();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].ids, b[k].ids);
  // every wide subcategory is its own closure, and closure is idempotent
  for (IdMask m = 0; m < (IdMask{1} << 6); ++m) {
    IdMask cl = oracle.closure(m);
    EXPECT_EQ(cl & m, m);
    EXPECT_EQ(oracle.closure(cl), cl);
  }
}

TEST_F(SinkSource, WideFamilyStableUnderLargerProbes) {
  WideBounds big = ctx().lambda().bounds();
  big.multiplicity *= 2;
  big.ext_dim_cap *= 2;
  WideEngine eng(rec().catalog(), big);
  auto a = ctx().lambda().enumerate_wide();
  auto b = eng.enumerate_wide();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].ids, b[k].ids);
}

TEST_F(SinkSource, WideSubcategoriesContainImagesOfTheirMaps) {
  const auto& eng = ctx().lambda();
  for (const auto& s : eng.enumerate_wide())
    for (int x : s.ids)
      for (int y : s.ids)
        for (const auto& f : hom_space(lam(x), lam(y))) {
          EXPECT_TRUE(eng.contains(s, image(f).object));
          EXPECT_TRUE(eng.contains(s, kernel(f).object));
          EXPECT_TRUE(eng.contains(s, cokernel(f).object));
        }
}

TEST(Wide, OneVertexHasTwo) {
  auto cat = enumerate_catalog(algebra(1, {}, 3), {1, 2});
  WideEngine eng(cat);
  EXPECT_EQ(eng.enumerate_wide().size(), 2u);
  EXPECT_EQ(FixpointOracle(cat).enumerate_wide().size(), 2u);
}

TEST(Wide, TooManyIndecomposables) {
  auto cat = enumerate_catalog(algebra(4, {{0, 3}, {1, 3}, {2, 3}}), {2, 6});
  WideBounds b;
  b.max_catalog = 10;
  WideEngine eng(cat, b);
  try {
    eng.enumerate_wide();
    FAIL() << "expected TooManyIndecomposables";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooManyIndecomposables);
  }
}

TEST(Wide, RejectsBadBounds) {
  auto cat = enumerate_catalog(algebra(1, {}), {1, 1});
  WideBounds b;
  b.multiplicity = 0;
  EXPECT_THROW(WideEngine(cat, b), Error);
}

TEST(Wide, MaskHelpers) {
  EXPECT_EQ(mask_of({0, 3}), IdMask{9});
  EXPECT_EQ(ids_of(9), (std::vector<int>{0, 3}));
  EXPECT_EQ(ids_string({1, 2}), "{1,2}");
  EXPECT_EQ(ids_string({}), "{}");
}

// --- correspondence with the corner ---------------------------------------

TEST_F(SinkSource, ForwardImages) {
  const auto& eng = ctx().lambda();
  EXPECT_EQ(restrict_to_corner(ctx(), eng.whole()), ctx().corner().whole());
  EXPECT_EQ(restrict_to_corner(ctx(), c({kS1})), ctx().corner().zero());
  EXPECT_EQ(restrict_to_corner(ctx(), c({kS1, kS3})), w({0}));
  EXPECT_EQ(restrict_to_corner(ctx(), c({kS2, kS1, k21})), w({1}));
}

TEST_F(SinkSource, BackwardImages) {
  EXPECT_EQ(pull_back_from_corner(ctx(), ctx().corner().zero()), c({kS1}));
  EXPECT_EQ(pull_back_from_corner(ctx(), ctx().corner().whole()), ctx().lambda().whole());
  EXPECT_EQ(pull_back_from_corner(ctx(), w({2})), c({kS1, k23, kP2}));
}

TEST_F(SinkSource, BijectionRoundTrip) {
  BijectionReport b = check_bijection(ctx());
  EXPECT_TRUE(b.passed());
  EXPECT_EQ(b.containing.size(), 5u);
  EXPECT_EQ(b.corner_wide.size(), 5u);
  std::set<std::vector<int>> imgs;
  for (const auto& i : b.images) imgs.insert(i.ids);
  EXPECT_EQ(imgs.size(), 5u);
}

TEST_F(SinkSource, CornerAdjointsReturn) {
  for (const auto& s : ctx().lambda().enumerate_wide_containing({kS1}))
    EXPECT_TRUE(check_corner_adjoints_return(ctx(), s).passed) << ids_string(s.ids);
  EXPECT_TRUE(check_corner_adjoints_return(ctx(), ctx().lambda().whole()).passed);
}

TEST_F(SinkSource, QuotientImages) {
  auto s2 = check_quotient_images(ctx(), c({kS2}));
  EXPECT_TRUE(s2.upper_hypothesis);
  EXPECT_TRUE(s2.upper_wide);
  EXPECT_TRUE(s2.upper.ids.empty());
  EXPECT_TRUE(s2.passed());

  auto z = check_quotient_images(ctx(), ctx().lambda().zero());
  EXPECT_TRUE(z.passed());

  for (const auto& s : ctx().lambda().enumerate_wide_containing({kS1})) {
    auto r = check_quotient_images(ctx(), s);
    EXPECT_TRUE(r.upper_hypothesis && r.shriek_hypothesis);
    EXPECT_EQ(r.upper, ctx().quotient().whole());
    EXPECT_EQ(r.shriek, ctx().quotient().whole());
  }
}

TEST_F(SinkSource, InducedRecollementOnEachRow) {
  for (const auto& s : ctx().lambda().enumerate_wide_containing({kS1})) {
    CheckReport r = check_induced_recollement(ctx(), s);
    EXPECT_FALSE(r.items.empty());
    for (const auto& it : r.items) {
      EXPECT_EQ(it.group, "3.8");
      EXPECT_TRUE(it.passed) << it.name << ": " << it.detail;
    }
  }
}

TEST(Correspondence, DegenerateIsIdentity) {
  WideContext ctx(a3_sink_source(), Idem{{0, 1, 2}}, {1, 4});
  BijectionReport b = check_bijection(ctx);
  EXPECT_TRUE(b.passed());
  ASSERT_EQ(b.containing.size(), b.corner_wide.size());
  for (std::size_t k = 0; k < b.containing.size(); ++k) EXPECT_EQ(b.images[k].ids, b.containing[k].ids);
}

}  // namespace
}  // namespace widerec
