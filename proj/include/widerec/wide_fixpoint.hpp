#pragma once

// Second, independent route to the wide subcategories of a catalog: grow a
// set of ids by adding kernels, cokernels and middle terms until nothing
// changes, and keep the sets that were already closed. Extensions are found
// from the other side (surjections B -> C with kernel A), and every probe is
// evaluated lazily against its own decomposition memo.

#include <map>
#include <optional>
#include <vector>

#include "widerec/wide.hpp"

namespace widerec {

class FixpointOracle {
 public:
  explicit FixpointOracle(const IsoCatalog& cat, WideBounds bounds = {}) : cat_(&cat), bounds_(bounds) {
    if (cat.size() > kMaxMaskIds)
      fail(ErrorKind::TooManyIndecomposables, "catalog too large for the fixpoint oracle");
    std::vector<int> all(cat.size());
    for (int i = 0; i < cat.size(); ++i) all[i] = i;
    sums_ = detail::multisets_up_to(all, bounds.multiplicity);
    for (const auto& s : sums_) sum_masks_.push_back(mask_of(s));
    kernel_memo_.resize(sums_.size() * cat.size());
    cokernel_memo_.resize(sums_.size() * cat.size());
    ext_memo_.resize(static_cast<std::size_t>(cat.size()) * cat.size());
  }

  /// Smallest superset of t closed under the probed kernels, cokernels and
  /// extensions.
  IdMask closure(IdMask t) const {
    while (true) {
      IdMask grown = t;
      for (std::size_t s = 0; s < sums_.size(); ++s) {
        if ((sum_masks_[s] & ~t) != 0) continue;
        for (int y : ids_of(t)) grown |= kernels_of(s, y) | cokernels_of(s, y);
      }
      for (int a : ids_of(t))
        for (int c : ids_of(t)) grown |= middles_of(a, c);
      if (grown == t) return t;
      t = grown;
    }
  }

  std::vector<WideSubcat> enumerate_wide(const std::vector<int>& base = {}) const {
    const int n = cat_->size();
    if (n > bounds_.max_catalog)
      fail(ErrorKind::TooManyIndecomposables,
           std::to_string(n) + " indecomposables exceed the subset enumeration cap of " + std::to_string(bounds_.max_catalog));
    const IdMask bm = mask_of(base);
    std::vector<WideSubcat> out;
    for (IdMask t = 0; t < (IdMask{1} << n); ++t)
      if ((bm & ~t) == 0 && closure(t) == t) out.push_back(WideSubcat::from_mask(cat_->algebra_ptr(), t));
    std::sort(out.begin(), out.end(), report_order);
    return out;
  }

 private:
  IdMask support(const QModule& m) const {
    if (m.is_zero()) return 0;
    std::vector<int> key = m.dims();
    for (const auto& a : m.actions()) key.insert(key.end(), a.entries().begin(), a.entries().end());
    auto [it, fresh] = support_memo_.try_emplace(std::move(key), 0);
    if (fresh) it->second = mask_of(decompose(*cat_, m, bounds_.budget));
    return it->second;
  }

  const QModule& sum_module(std::size_t s) const {
    auto [it, fresh] = sum_modules_.try_emplace(s);
    if (fresh) it->second = catalog_sum(*cat_, sums_[s]);
    return it->second;
  }

  void sweep(const QModule& src, const QModule& tgt, const std::function<bool(const ModuleMap&)>& visit) const {
    auto hom = hom_space(src, tgt);
    if (hom.empty()) return;
    if (!bounds_.budget.combinations(src.field().p(), static_cast<int>(hom.size())))
      fail(ErrorKind::SearchBudgetExceeded, "fixpoint probe hom space exceeds the search budget");
    for_each_combination(hom, src, tgt, bounds_.budget, [&](const std::vector<Mat>& c) {
      return visit(ModuleMap(src, tgt, c));
    });
  }

  IdMask kernels_of(std::size_t s, int y) const {
    auto& slot = kernel_memo_[s * cat_->size() + y];
    if (!slot) {
      IdMask acc = 0;
      sweep(sum_module(s), (*cat_)[y], [&](const ModuleMap& f) {
        acc |= support(kernel(f).object);
        return false;
      });
      slot = acc;
    }
    return *slot;
  }

  IdMask cokernels_of(std::size_t s, int x) const {
    auto& slot = cokernel_memo_[s * cat_->size() + x];
    if (!slot) {
      IdMask acc = 0;
      sweep((*cat_)[x], sum_module(s), [&](const ModuleMap& f) {
        acc |= support(cokernel(f).object);
        return false;
      });
      slot = acc;
    }
    return *slot;
  }

  /// Union of the supports of all middle terms B of 0 -> A -> B -> C -> 0,
  /// found as surjections B -> C whose kernel is isomorphic to A.
  IdMask middles_of(int a, int c) const {
    auto& slot = ext_memo_[static_cast<std::size_t>(a) * cat_->size() + c];
    if (!slot) {
      const QModule& ma = (*cat_)[a];
      const QModule& mc = (*cat_)[c];
      IdMask acc = 0;
      if (ma.total_dim() + mc.total_dim() <= bounds_.ext_dim_cap) {
        for (const auto& mid : detail::multisets_with_dims(*cat_, detail::add_dims(ma.dims(), mc.dims()))) {
          const IdMask bm = mask_of(mid);
          if ((bm & ~acc) == 0) continue;
          QModule b = catalog_sum(*cat_, mid);
          bool found = false;
          sweep(b, mc, [&](const ModuleMap& g) {
            found = g.is_surjective() && is_isomorphic(kernel(g).object, ma, bounds_.budget);
            return found;
          });
          if (found) acc |= bm;
        }
      }
      slot = acc;
    }
    return *slot;
  }

  const IsoCatalog* cat_;
  WideBounds bounds_;
  std::vector<std::vector<int>> sums_;
  std::vector<IdMask> sum_masks_;
  mutable std::map<std::vector<int>, IdMask> support_memo_;
  mutable std::map<std::size_t, QModule> sum_modules_;
  mutable std::vector<std::optional<IdMask>> kernel_memo_;
  mutable std::vector<std::optional<IdMask>> cokernel_memo_;
  mutable std::vector<std::optional<IdMask>> ext_memo_;
};

}  // namespace widerec
