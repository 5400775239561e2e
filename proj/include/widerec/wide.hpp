#pragma once

// Wide subcategories of a catalog-described module category: id-set
// representation, closure checks by bounded probing, and exhaustive
// enumeration.
//
// Every probe (a map between small sums of catalog objects, or an extension
// of two catalog objects) yields an implication "if these ids are in S then
// those ids are in S". The implications are computed once per catalog, after
// which is_wide is a pass of bitmask tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "widerec/catalog.hpp"
#include "widerec/module.hpp"

namespace widerec {

using IdMask = std::uint64_t;

inline constexpr int kMaxMaskIds = 64;

inline IdMask mask_of(const std::vector<int>& ids) {
  IdMask m = 0;
  for (int i : ids) m |= IdMask{1} << i;
  return m;
}

inline std::vector<int> ids_of(IdMask m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

/// Knobs of the probing closure checks.
struct WideBounds {
  int multiplicity = 2;    // summands in probe sums
  SearchBudget budget = SearchBudget::from_env();
  int ext_dim_cap = 12;    // largest middle term (total dim) searched for extensions
  int max_catalog = 20;    // subset enumeration cap
};

/// Full additive subcategory generated by a set of catalog indecomposables.
/// The zero subcategory is the empty set.
struct WideSubcat {
  AlgebraPtr algebra;
  std::vector<int> ids;  // sorted, unique

  static WideSubcat of(AlgebraPtr alg, std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return WideSubcat{std::move(alg), std::move(ids)};
  }
  static WideSubcat from_mask(AlgebraPtr alg, IdMask m) { return WideSubcat{std::move(alg), ids_of(m)}; }

  IdMask mask() const { return mask_of(ids); }
  bool has(int id) const { return std::binary_search(ids.begin(), ids.end(), id); }
  bool includes(const WideSubcat& o) const { return std::includes(ids.begin(), ids.end(), o.ids.begin(), o.ids.end()); }
  int size() const { return static_cast<int>(ids.size()); }

  friend bool operator==(const WideSubcat& a, const WideSubcat& b) { return a.algebra == b.algebra && a.ids == b.ids; }
};

/// Report order: by cardinality, then lexicographically by ids.
inline bool report_order(const WideSubcat& a, const WideSubcat& b) {
  if (a.ids.size() != b.ids.size()) return a.ids.size() < b.ids.size();
  return a.ids < b.ids;
}

inline std::string ids_string(const std::vector<int>& ids) {
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + std::to_string(ids[i]);
  return s + "}";
}

namespace detail {

/// Sorted multisets of ids from pool with 1..k elements.
inline std::vector<std::vector<int>> multisets_up_to(const std::vector<int>& pool, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!cur.empty()) out.push_back(cur);
    if (static_cast<int>(cur.size()) == k) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Sorted multisets of catalog ids whose dimension vectors add up to target.
inline std::vector<std::vector<int>> multisets_with_dims(const IsoCatalog& cat, const std::vector<int>& target) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur, rest = target;
  std::function<void(int)> rec = [&](int from) {
    if (std::all_of(rest.begin(), rest.end(), [](int d) { return d == 0; })) {
      out.push_back(cur);
      return;
    }
    for (int id = from; id < cat.size(); ++id) {
      const auto& d = cat[id].dims();
      bool fits = true;
      for (std::size_t v = 0; v < d.size(); ++v)
        if (d[v] > rest[v]) { fits = false; break; }
      if (!fits) continue;
      for (std::size_t v = 0; v < d.size(); ++v) rest[v] -= d[v];
      cur.push_back(id);
      rec(id);
      cur.pop_back();
      for (std::size_t v = 0; v < d.size(); ++v) rest[v] += d[v];
    }
  };
  rec(0);
  return out;
}

inline std::vector<int> add_dims(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

/// Memoized decomposition keyed by the exact module data.
class DecomposeCache {
 public:
  explicit DecomposeCache(const IsoCatalog& cat, SearchBudget budget) : cat_(&cat), budget_(budget) {}

  IdMask support(const QModule& m) {
    if (m.is_zero()) return 0;
    std::vector<int> key = m.dims();
    for (const auto& a : m.actions()) key.insert(key.end(), a.entries().begin(), a.entries().end());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    IdMask s = mask_of(decompose(*cat_, m, budget_));
    memo_.emplace(std::move(key), s);
    return s;
  }

 private:
  const IsoCatalog* cat_;
  SearchBudget budget_;
  std::map<std::vector<int>, IdMask> memo_;
};

/// Visits the nonzero maps of a hom basis up to nonzero scalars (first
/// nonzero coordinate equal to 1); kernels and cokernels are scalar invariant.
/// Stops when visit returns true.
inline bool for_each_projective_map(const std::vector<ModuleMap>& basis, const QModule& src, const QModule& tgt,
                                    const SearchBudget& budget, const std::function<bool(const ModuleMap&)>& visit) {
  const int d = static_cast<int>(basis.size());
  if (d == 0) return false;
  const int p = src.field().p();
  if (!budget.combinations(p, d))
    fail(ErrorKind::SearchBudgetExceeded, "probe hom space of dimension " + std::to_string(d) + " exceeds the search budget");
  for (int lead = 0; lead < d; ++lead) {
    // coordinates lead+1..d-1 free, coordinate lead = 1, earlier ones zero
    std::vector<ModuleMap> tail(basis.begin() + lead + 1, basis.end());
    const auto& b0 = basis[lead];
    auto res = for_each_combination(tail, src, tgt, budget, [&](const std::vector<Mat>& c) {
      std::vector<Mat> comps = c;
      for (std::size_t v = 0; v < comps.size(); ++v) comps[v] += b0.component(static_cast<int>(v));
      return visit(ModuleMap(src, tgt, std::move(comps)));
    });
    if (res == SearchResult::Found) return true;
  }
  return false;
}

}  // namespace detail

/// Implication "premise subset of S implies conclusion subset of S".
struct ClosureRule {
  IdMask premise = 0;
  IdMask conclusion = 0;
};

class WideEngine {
 public:
  explicit WideEngine(const IsoCatalog& cat, WideBounds bounds = {})
      : cat_(&cat), bounds_(bounds), cache_(cat, bounds.budget) {
    if (bounds.multiplicity < 1 || bounds.ext_dim_cap < 1 || bounds.max_catalog < 1)
      fail(ErrorKind::InvalidInput, "wide bounds must be positive");
  }

  const IsoCatalog& catalog() const noexcept { return *cat_; }
  const WideBounds& bounds() const noexcept { return bounds_; }

  WideSubcat zero() const { return WideSubcat{cat_->algebra_ptr(), {}}; }
  WideSubcat whole() const {
    std::vector<int> all(cat_->size());
    for (int i = 0; i < cat_->size(); ++i) all[i] = i;
    return WideSubcat{cat_->algebra_ptr(), std::move(all)};
  }
  WideSubcat make(std::vector<int> ids) const {
    for (int i : ids)
      if (i < 0 || i >= cat_->size()) fail(ErrorKind::InvalidInput, "catalog id out of range");
    return WideSubcat::of(cat_->algebra_ptr(), std::move(ids));
  }

  /// Ids of the indecomposable summands of m (as a set).
  std::vector<int> support(const QModule& m) const { return ids_of(cache_.support(m)); }

  /// Every indecomposable summand of m lies in S.
  bool contains(const WideSubcat& s, const QModule& m) const {
    check_algebra(s);
    return (cache_.support(m) & ~s.mask()) == 0;
  }

  bool closed_under_kernels(const WideSubcat& s) const { return satisfies(kernel_rules(), s); }
  bool closed_under_cokernels(const WideSubcat& s) const { return satisfies(cokernel_rules(), s); }
  bool closed_under_extensions(const WideSubcat& s) const { return satisfies(extension_rules(), s); }

  bool is_wide(const WideSubcat& s) const {
    return closed_under_kernels(s) && closed_under_cokernels(s) && closed_under_extensions(s);
  }

  /// First rule violated by S, described for reports.
  std::optional<std::string> violation(const WideSubcat& s) const {
    const IdMask m = s.mask();
    auto find = [&](const std::vector<ClosureRule>& rules, const char* what) -> std::optional<std::string> {
      for (const auto& r : rules)
        if ((r.premise & ~m) == 0 && (r.conclusion & ~m) != 0)
          return std::string(what) + " of objects from " + ids_string(ids_of(r.premise)) + " needs " +
                 ids_string(ids_of(r.conclusion & ~m));
      return std::nullopt;
    };
    if (auto v = find(kernel_rules(), "kernel")) return v;
    if (auto v = find(cokernel_rules(), "cokernel")) return v;
    return find(extension_rules(), "extension");
  }

  std::vector<WideSubcat> enumerate_wide() const { return enumerate_wide_containing({}); }

  std::vector<WideSubcat> enumerate_wide_containing(const std::vector<int>& base) const {
    const int n = cat_->size();
    if (n > bounds_.max_catalog)
      fail(ErrorKind::TooManyIndecomposables,
           std::to_string(n) + " indecomposables exceed the subset enumeration cap of " + std::to_string(bounds_.max_catalog));
    const IdMask bm = mask_of(base);
    const auto& kr = kernel_rules();
    const auto& cr = cokernel_rules();
    const auto& er = extension_rules();
    std::vector<WideSubcat> out;
    for (IdMask m = 0; m < (IdMask{1} << n); ++m) {
      if ((bm & ~m) != 0) continue;
      if (holds(kr, m) && holds(cr, m) && holds(er, m)) out.push_back(WideSubcat::from_mask(cat_->algebra_ptr(), m));
    }
    std::sort(out.begin(), out.end(), report_order);
    return out;
  }

  const std::vector<ClosureRule>& kernel_rules() const {
    if (!kernel_rules_) kernel_rules_ = build_map_rules(true);
    return *kernel_rules_;
  }
  const std::vector<ClosureRule>& cokernel_rules() const {
    if (!cokernel_rules_) cokernel_rules_ = build_map_rules(false);
    return *cokernel_rules_;
  }
  const std::vector<ClosureRule>& extension_rules() const {
    if (!extension_rules_) extension_rules_ = build_extension_rules();
    return *extension_rules_;
  }

 private:
  void check_algebra(const WideSubcat& s) const {
    if (s.algebra && s.algebra != cat_->algebra_ptr()) fail(ErrorKind::InvalidInput, "subcategory of a different algebra");
  }

  static bool holds(const std::vector<ClosureRule>& rules, IdMask m) {
    for (const auto& r : rules)
      if ((r.premise & ~m) == 0 && (r.conclusion & ~m) != 0) return false;
    return true;
  }

  bool satisfies(const std::vector<ClosureRule>& rules, const WideSubcat& s) const {
    check_algebra(s);
    return holds(rules, s.mask());
  }

  static std::vector<ClosureRule> collect(const std::map<IdMask, IdMask>& m) {
    std::vector<ClosureRule> out;
    for (auto [p, c] : m)
      if ((c & ~p) != 0) out.push_back(ClosureRule{p, c});
    return out;
  }

  void check_size() const {
    if (cat_->size() > kMaxMaskIds)
      fail(ErrorKind::TooManyIndecomposables, "catalog has more than " + std::to_string(kMaxMaskIds) + " indecomposables");
  }

  /// Kernels of X -> N (X a sum of at most b catalog objects, N one object),
  /// or dually cokernels of N -> Y.
  std::vector<ClosureRule> build_map_rules(bool kernels) const {
    check_size();
    std::vector<int> all(cat_->size());
    for (int i = 0; i < cat_->size(); ++i) all[i] = i;
    std::map<IdMask, IdMask> acc;
    for (const auto& sum : detail::multisets_up_to(all, bounds_.multiplicity)) {
      QModule x = catalog_sum(*cat_, sum);
      const IdMask xm = mask_of(sum);
      for (int n = 0; n < cat_->size(); ++n) {
        const QModule& y = (*cat_)[n];
        const QModule& src = kernels ? x : y;
        const QModule& tgt = kernels ? y : x;
        IdMask& concl = acc[xm | (IdMask{1} << n)];
        detail::for_each_projective_map(hom_space(src, tgt), src, tgt, bounds_.budget, [&](const ModuleMap& f) {
          concl |= kernels ? cache_.support(kernel(f).object) : cache_.support(cokernel(f).object);
          return false;
        });
      }
    }
    return collect(acc);
  }

  /// For indecomposable ends A, C: every catalog-representable B with
  /// dim B = dim A + dim C admitting an injection A -> B with cokernel C.
  std::vector<ClosureRule> build_extension_rules() const {
    check_size();
    std::map<IdMask, IdMask> acc;
    const int n = cat_->size();
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        const QModule& ma = (*cat_)[a];
        const QModule& mc = (*cat_)[c];
        if (ma.total_dim() + mc.total_dim() > bounds_.ext_dim_cap) continue;
        std::vector<int> split{std::min(a, c), std::max(a, c)};
        IdMask& concl = acc[(IdMask{1} << a) | (IdMask{1} << c)];
        for (const auto& mid : detail::multisets_with_dims(*cat_, detail::add_dims(ma.dims(), mc.dims()))) {
          if (mid == split) continue;
          const IdMask bm = mask_of(mid);
          if ((bm & ~concl) == 0) continue;  // nothing new to learn
          QModule b = catalog_sum(*cat_, mid);
          auto hom = hom_space(ma, b);
          bool found = false;
          try {
            found = detail::for_each_projective_map(hom, ma, b, bounds_.budget, [&](const ModuleMap& f) {
              return f.is_injective() && is_isomorphic(cokernel(f).object, mc, bounds_.budget);
            });
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::SearchBudgetExceeded) throw;
            fail(ErrorKind::SearchBudgetExceeded, "extension search for middle term " + ids_string(mid) + ": " + e.detail());
          }
          if (found) concl |= bm;
        }
      }
    return collect(acc);
  }

  const IsoCatalog* cat_;
  WideBounds bounds_;
  mutable detail::DecomposeCache cache_;
  mutable std::optional<std::vector<ClosureRule>> kernel_rules_;
  mutable std::optional<std::vector<ClosureRule>> cokernel_rules_;
  mutable std::optional<std::vector<ClosureRule>> extension_rules_;
};

}  // namespace widerec
