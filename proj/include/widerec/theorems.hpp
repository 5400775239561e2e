#pragma once

// Mechanical verification of how wide subcategories interact with the
// idempotent recollement: the correspondence C <-> j^*(C) for wide C
// containing i_*(mod L'), the wideness of i^*(C) and i^!(C), and the
// recollement of wide subcategories A' -> C -> j^*(C).

#include <memory>
#include <string>
#include <vector>

#include "widerec/recollement.hpp"
#include "widerec/wide.hpp"

namespace widerec {

/// A recollement together with wide engines on its three catalogs.
class WideContext {
 public:
  WideContext(AlgebraPtr lambda, Idem e, CatalogBounds cb = {}, WideBounds wb = {})
      : rec_(std::move(lambda), std::move(e), cb, wb.budget),
        lam_(rec_.catalog(), wb),
        quot_(rec_.quotient_catalog(), wb),
        corner_(rec_.corner_catalog(), wb) {}
  WideContext(const WideContext&) = delete;
  WideContext& operator=(const WideContext&) = delete;

  const Recollement& rec() const noexcept { return rec_; }
  const WideEngine& lambda() const noexcept { return lam_; }
  const WideEngine& quotient() const noexcept { return quot_; }
  const WideEngine& corner() const noexcept { return corner_; }

  WideSubcat base() const { return lam_.make(rec_.i_star_image_ids()); }

 private:
  Recollement rec_;
  WideEngine lam_;
  WideEngine quot_;
  WideEngine corner_;
};

/// C |-> j^*(C): the corner ids occurring as summands of j^*(M), M in C.
inline WideSubcat restrict_to_corner(const WideContext& ctx, const WideSubcat& s) {
  std::vector<int> ids;
  for (int id : s.ids) {
    auto part = ctx.corner().support(ctx.rec().j_upper(ctx.rec().catalog()[id]));
    ids.insert(ids.end(), part.begin(), part.end());
  }
  return ctx.corner().make(std::move(ids));
}

/// W |-> {M : j^*(M) in W}.
inline WideSubcat pull_back_from_corner(const WideContext& ctx, const WideSubcat& w) {
  std::vector<int> ids;
  const auto& cat = ctx.rec().catalog();
  for (int id = 0; id < cat.size(); ++id)
    if (ctx.corner().contains(w, ctx.rec().j_upper(cat[id]))) ids.push_back(id);
  return ctx.lambda().make(std::move(ids));
}

/// j_*j^*(C) and j_!j^*(C) lie in C.
inline CheckItem check_corner_adjoints_return(const WideContext& ctx, const WideSubcat& s) {
  CheckItem item{"j_*j^*(C) and j_!j^*(C) inside C for " + ids_string(s.ids), "3.1", true, ""};
  const auto& rec = ctx.rec();
  for (int id : s.ids) {
    QModule n = rec.j_upper(rec.catalog()[id]);
    if (!ctx.lambda().contains(s, rec.j_lower(n))) {
      item.passed = false;
      item.detail = "j_*j^* of id " + std::to_string(id) + " leaves C";
      return item;
    }
    if (!ctx.lambda().contains(s, rec.j_shriek(n))) {
      item.passed = false;
      item.detail = "j_!j^* of id " + std::to_string(id) + " leaves C";
      return item;
    }
  }
  return item;
}

struct BijectionReport {
  std::vector<WideSubcat> containing;   // wide subcategories of mod L containing i_*(mod L')
  std::vector<WideSubcat> corner_wide;  // wide subcategories of mod L''
  std::vector<WideSubcat> images;       // images[k] = j^*(containing[k])
  std::vector<WideSubcat> preimages;    // preimages[k] = pull back of corner_wide[k]
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

inline BijectionReport check_bijection(const WideContext& ctx) {
  BijectionReport rep;
  const WideSubcat base = ctx.base();
  rep.containing = ctx.lambda().enumerate_wide_containing(base.ids);
  rep.corner_wide = ctx.corner().enumerate_wide();
  for (const auto& s : rep.containing) {
    WideSubcat w = restrict_to_corner(ctx, s);
    if (!ctx.corner().is_wide(w)) rep.failures.push_back("j^*" + ids_string(s.ids) + " = " + ids_string(w.ids) + " is not wide");
    if (!(pull_back_from_corner(ctx, w) == s))
      rep.failures.push_back("pulling back j^*" + ids_string(s.ids) + " does not return it");
    rep.images.push_back(std::move(w));
  }
  for (const auto& w : rep.corner_wide) {
    WideSubcat s = pull_back_from_corner(ctx, w);
    if (!ctx.lambda().is_wide(s)) rep.failures.push_back("pull back of " + ids_string(w.ids) + " is not wide");
    if (!s.includes(base)) rep.failures.push_back("pull back of " + ids_string(w.ids) + " misses i_*(mod L')");
    if (!(restrict_to_corner(ctx, s) == w)) rep.failures.push_back("j^* of the pull back of " + ids_string(w.ids) + " differs");
    rep.preimages.push_back(std::move(s));
  }
  if (rep.containing.size() != rep.corner_wide.size())
    rep.failures.push_back(std::to_string(rep.containing.size()) + " subcategories on one side, " +
                           std::to_string(rep.corner_wide.size()) + " on the other");
  return rep;
}

struct QuotientImageReport {
  WideSubcat source;
  bool upper_hypothesis = false;  // i_*i^*(C) inside C
  bool upper_wide = false;
  WideSubcat upper;               // i^*(C)
  bool shriek_hypothesis = false; // i_*i^!(C) inside C
  bool shriek_wide = false;
  WideSubcat shriek;              // i^!(C)
  bool passed() const { return (!upper_hypothesis || upper_wide) && (!shriek_hypothesis || shriek_wide); }
};

/// For wide C: if i_*i^*(C) lies in C then i^*(C) is wide, and likewise for i^!.
inline QuotientImageReport check_quotient_images(const WideContext& ctx, const WideSubcat& s) {
  const auto& rec = ctx.rec();
  QuotientImageReport rep;
  rep.source = s;
  rep.upper_hypothesis = rep.shriek_hypothesis = true;
  std::vector<int> up, sh;
  for (int id : s.ids) {
    const QModule& m = rec.catalog()[id];
    QModule u = rec.i_upper(m), k = rec.i_shriek(m);
    if (!ctx.lambda().contains(s, rec.i_star(u))) rep.upper_hypothesis = false;
    if (!ctx.lambda().contains(s, rec.i_star(k))) rep.shriek_hypothesis = false;
    auto a = ctx.quotient().support(u), b = ctx.quotient().support(k);
    up.insert(up.end(), a.begin(), a.end());
    sh.insert(sh.end(), b.begin(), b.end());
  }
  rep.upper = ctx.quotient().make(std::move(up));
  rep.shriek = ctx.quotient().make(std::move(sh));
  if (rep.upper_hypothesis) rep.upper_wide = ctx.quotient().is_wide(rep.upper);
  if (rep.shriek_hypothesis) rep.shriek_wide = ctx.quotient().is_wide(rep.shriek);
  return rep;
}

/// The recollement mod L' -> C -> j^*(C) for wide C containing i_*(mod L').
inline CheckReport check_induced_recollement(const WideContext& ctx, const WideSubcat& s) {
  using F = FunctorTag;
  const auto& rec = ctx.rec();
  const auto& cat = rec.catalog();
  CheckReport rep;
  const std::string tag = ids_string(s.ids);
  auto item = [&](std::string name) { return CheckItem{std::move(name) + " for C = " + tag, "3.8", true, ""}; };

  {
    CheckItem it = item("C wide and contains i_*(mod L')");
    if (!ctx.lambda().is_wide(s)) {
      it.passed = false;
      it.detail = ctx.lambda().violation(s).value_or("not wide");
    } else if (!s.includes(ctx.base())) {
      it.passed = false;
      it.detail = "i_*(mod L') not contained";
    }
    rep.items.push_back(std::move(it));
    if (!rep.passed()) return rep;
  }

  const WideSubcat w = restrict_to_corner(ctx, s);
  std::vector<QModule> cs, ws, qs = rec.quotient_catalog().entries();
  for (int id : s.ids) cs.push_back(cat[id]);
  for (int id : w.ids) ws.push_back(rec.corner_catalog()[id]);

  {
    CheckItem it = item("j^*(C) wide");
    it.passed = ctx.corner().is_wide(w);
    it.detail = ids_string(w.ids);
    rep.items.push_back(std::move(it));
  }

  {
    CheckItem it = item("functors land in the restricted categories");
    auto bad = [&](const std::string& why) {
      if (it.passed) it.detail = why;
      it.passed = false;
    };
    for (const auto& n : qs)
      if (!ctx.lambda().contains(s, rec.i_star(n))) bad("i_* leaves C");
    for (const auto& m : cs) {
      if (!ctx.corner().contains(w, rec.j_upper(m))) bad("j^* leaves j^*(C)");
      if (!ctx.lambda().contains(s, rec.i_star(rec.i_upper(m)))) bad("i_*i^* leaves C");
      if (!ctx.lambda().contains(s, rec.j_lower(rec.j_upper(m)))) bad("j_*j^* leaves C");
    }
    for (const auto& n : ws) {
      if (!ctx.lambda().contains(s, rec.j_shriek(n))) bad("j_! leaves C");
      if (!ctx.lambda().contains(s, rec.j_lower(n))) bad("j_* leaves C");
      if (!ctx.corner().contains(w, rec.j_upper(rec.j_shriek(n)))) bad("j^*j_! leaves j^*(C)");
    }
    rep.items.push_back(std::move(it));
  }

  {
    CheckItem it = item("i^*(C) = i^!(C) = mod L'");
    std::vector<int> up, sh;
    for (const auto& m : cs) {
      auto a = ctx.quotient().support(rec.i_upper(m));
      auto b = ctx.quotient().support(rec.i_shriek(m));
      up.insert(up.end(), a.begin(), a.end());
      sh.insert(sh.end(), b.begin(), b.end());
    }
    const WideSubcat all = ctx.quotient().whole();
    it.passed = ctx.quotient().make(up) == all && ctx.quotient().make(sh) == all;
    if (!it.passed) it.detail = "images " + ids_string(ctx.quotient().make(up).ids) + " and " + ids_string(ctx.quotient().make(sh).ids);
    rep.items.push_back(std::move(it));
  }

  struct Pair {
    F left, right;
    const std::vector<QModule>* as;
    const std::vector<QModule>* bs;
  };
  for (const auto& pr : {Pair{F::IUpper, F::IStar, &cs, &qs}, Pair{F::IStar, F::IShriek, &qs, &cs},
                         Pair{F::JShriek, F::JUpper, &ws, &cs}, Pair{F::JUpper, F::JLower, &cs, &ws}}) {
    CheckItem it = item(std::string("restricted adjunction (") + to_string(pr.left) + ", " + to_string(pr.right) + ")");
    for (const auto& a : *pr.as)
      for (const auto& b : *pr.bs) {
        std::string why;
        if (!rec.adjunction_bijection(pr.left, pr.right, a, b).invertible) {
          it.passed = false;
          it.detail = "phi not bijective";
        } else if (!rec.adjunction_natural(pr.left, pr.right, a, b, *pr.as, *pr.bs, &why)) {
          it.passed = false;
          it.detail = why;
        }
      }
    rep.items.push_back(std::move(it));
  }

  {
    // Hom(FC, FD) = Hom(GFC, GFD) with GFC, GFD back in C
    CheckItem it = item("hom-dimension chains through i_*i^*, j_*j^*, j_!j^*");
    for (const auto& c : cs)
      for (const auto& d : cs) {
        QModule ic = rec.i_upper(c), id = rec.i_upper(d);
        QModule jc = rec.j_upper(c), jd = rec.j_upper(d);
        const int hi = hom_dim(ic, id), hj = hom_dim(jc, jd);
        if (hi != hom_dim(rec.i_star(ic), rec.i_star(id))) {
          it.passed = false;
          it.detail = "dim Hom(i^*C, i^*D) differs from dim Hom(i_*i^*C, i_*i^*D)";
        }
        if (hj != hom_dim(rec.j_lower(jc), rec.j_lower(jd))) {
          it.passed = false;
          it.detail = "dim Hom(j^*C, j^*D) differs from dim Hom(j_*j^*C, j_*j^*D)";
        }
        if (hj != hom_dim(rec.j_shriek(jc), rec.j_shriek(jd))) {
          it.passed = false;
          it.detail = "dim Hom(j^*C, j^*D) differs from dim Hom(j_!j^*C, j_!j^*D)";
        }
      }
    rep.items.push_back(std::move(it));
  }

  {
    CheckItem it = item("restricted i_*, j_!, j_* fully faithful");
    for (const auto& x : qs)
      for (const auto& y : qs)
        if (!rec.fully_faithful_on(F::IStar, x, y)) it.passed = false;
    for (const auto& x : ws)
      for (const auto& y : ws)
        if (!rec.fully_faithful_on(F::JShriek, x, y) || !rec.fully_faithful_on(F::JLower, x, y)) it.passed = false;
    if (!it.passed) it.detail = "Hom map not bijective";
    rep.items.push_back(std::move(it));
  }

  {
    CheckItem it = item("restricted Im i_* = Ker j^*");
    const auto& base = rec.i_star_image_ids();
    for (int id : s.ids) {
      bool in_kernel = rec.j_upper(cat[id]).is_zero();
      bool in_image = std::binary_search(base.begin(), base.end(), id);
      if (in_kernel != in_image) {
        it.passed = false;
        it.detail = "mismatch at id " + std::to_string(id);
      }
    }
    rep.items.push_back(std::move(it));
  }
  return rep;
}

}  // namespace widerec
