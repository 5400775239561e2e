#pragma once

// Exhaustive catalogs of indecomposable modules up to a dimension bound, and
// Krull-Schmidt decomposition against a catalog.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "widerec/module.hpp"

namespace widerec {

struct CatalogBounds {
  int vertex_dim = 2;
  int total_dim = 6;
};

class IsoCatalog {
 public:
  IsoCatalog() = default;
  IsoCatalog(AlgebraPtr alg, CatalogBounds bounds, std::vector<QModule> entries)
      : alg_(std::move(alg)), bounds_(bounds), entries_(std::move(entries)) {}

  const AlgebraPtr& algebra_ptr() const noexcept { return alg_; }
  const PresentedAlgebra& algebra() const noexcept { return *alg_; }
  const CatalogBounds& bounds() const noexcept { return bounds_; }
  const std::vector<QModule>& entries() const noexcept { return entries_; }
  const QModule& operator[](int id) const { return entries_[id]; }
  int size() const noexcept { return static_cast<int>(entries_.size()); }

  /// Id of the entry isomorphic to the indecomposable m, if any.
  std::optional<int> find(const QModule& m, const SearchBudget& budget) const {
    for (int i = 0; i < size(); ++i)
      if (entries_[i].dims() == m.dims() && is_isomorphic(entries_[i], m, budget)) return i;
    return std::nullopt;
  }

  std::string label(int id) const { return loewy_label(entries_[id]); }

 private:
  AlgebraPtr alg_;
  CatalogBounds bounds_;
  std::vector<QModule> entries_;
};

namespace detail {

/// Dimension vectors within bounds, ordered by (total, lexicographic).
inline std::vector<std::vector<int>> dim_vectors(int n, const CatalogBounds& b) {
  std::vector<std::vector<int>> all;
  std::vector<int> cur(n, 0);
  std::function<void(int, int)> rec = [&](int v, int total) {
    if (v == n) {
      if (total > 0) all.push_back(cur);
      return;
    }
    for (int d = 0; d <= b.vertex_dim && total + d <= b.total_dim; ++d) {
      cur[v] = d;
      rec(v + 1, total + d);
    }
    cur[v] = 0;
  };
  rec(0, 0);
  std::stable_sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    int sx = 0, sy = 0;
    for (int d : x) sx += d;
    for (int d : y) sy += d;
    if (sx != sy) return sx < sy;
    return x < y;
  });
  return all;
}

/// The support graph (vertices with nonzero dimension, arrows with nonzero
/// action) must be connected for an indecomposable.
inline bool support_connected(const QModule& m) {
  const auto& q = m.algebra().quiver();
  const int n = q.vertex_count();
  std::vector<int> comp(n);
  for (int v = 0; v < n; ++v) comp[v] = v;
  std::function<int(int)> find = [&](int v) { return comp[v] == v ? v : comp[v] = find(comp[v]); };
  for (int a = 0; a < q.arrow_count(); ++a)
    if (!m.action(a).is_zero()) comp[find(q.arrows[a].source)] = find(q.arrows[a].target);
  int root = -1;
  for (int v = 0; v < n; ++v) {
    if (m.dim(v) == 0) continue;
    if (root < 0) root = find(v);
    else if (find(v) != root) return false;
  }
  return true;
}

}  // namespace detail

namespace detail {

/// Arrows with pairwise disjoint endpoints (greedy in arrow order) and nonzero
/// ends. Base changes at the endpoints bring each of them to rank normal form
/// independently, so only the rank needs enumerating.
inline std::vector<bool> normal_form_arrows(const Quiver& q, const std::vector<int>& dims) {
  std::vector<bool> used(q.vertex_count(), false), chosen(q.arrow_count(), false);
  for (int a = 0; a < q.arrow_count(); ++a) {
    const auto& ar = q.arrows[a];
    if (dims[ar.source] == 0 || dims[ar.target] == 0 || used[ar.source] || used[ar.target]) continue;
    used[ar.source] = used[ar.target] = true;
    chosen[a] = true;
  }
  return chosen;
}

inline Mat rank_normal_form(int rows, int cols, int r, const Field& f) {
  Mat m(rows, cols, f);
  for (int i = 0; i < r; ++i) m(i, i) = 1;
  return m;
}

}  // namespace detail

/// Enumerates arrow-action tuples for every dimension vector within the
/// bounds (with a vertex-disjoint set of arrows in rank normal form), keeps
/// the indecomposables satisfying the relations and buckets them by
/// isomorphism. Ids follow (total dim, dim vector lex, first found).
inline IsoCatalog enumerate_catalog(const AlgebraPtr& alg, const CatalogBounds& bounds,
                                    const SearchBudget& budget = SearchBudget::from_env()) {
  const auto& q = alg->quiver();
  const Field& f = alg->field();
  const int p = f.p();
  if (bounds.vertex_dim < 1 || bounds.total_dim < 1) fail(ErrorKind::InvalidInput, "catalog bounds must be positive");
  std::vector<QModule> entries;
  for (const auto& dims : detail::dim_vectors(q.vertex_count(), bounds)) {
    const auto normal = detail::normal_form_arrows(q, dims);
    std::vector<int> sizes;
    int free_entries = 0;
    std::uint64_t rank_choices = 1;
    for (int a = 0; a < q.arrow_count(); ++a) {
      const auto& ar = q.arrows[a];
      if (normal[a]) {
        sizes.push_back(0);
        rank_choices *= static_cast<std::uint64_t>(std::min(dims[ar.target], dims[ar.source]) + 1);
      } else {
        sizes.push_back(dims[ar.target] * dims[ar.source]);
        free_entries += sizes.back();
      }
    }
    auto combos = budget.combinations(p, free_entries);
    if (!combos || *combos * rank_choices > budget.max_combinations)
      fail(ErrorKind::SearchBudgetExceeded, "too many action tuples for dimension vector " + dim_vector_string(dims));
    std::vector<int> ranks(q.arrow_count(), 0);
    std::vector<QModule> found_here;
    while (true) {
      std::vector<int> digits(free_entries, 0);
      while (true) {
        std::vector<Mat> acts;
        int pos = 0;
        for (int a = 0; a < q.arrow_count(); ++a) {
          const auto& ar = q.arrows[a];
          if (normal[a]) {
            acts.push_back(detail::rank_normal_form(dims[ar.target], dims[ar.source], ranks[a], f));
            continue;
          }
          std::vector<int> e(digits.begin() + pos, digits.begin() + pos + sizes[a]);
          acts.emplace_back(dims[ar.target], dims[ar.source], f, std::move(e));
          pos += sizes[a];
        }
        bool ok = true;
        for (const auto& rel : alg->relations()) {
          const Path& first = rel.front().path;
          Mat m(dims[first.target], dims[first.source], f);
          for (const auto& t : rel) {
            Mat pa = Mat::identity(dims[t.path.source], f);
            for (int a : t.path.arrows) pa = acts[a] * pa;
            m += t.coeff * pa;
          }
          if (!m.is_zero()) { ok = false; break; }
        }
        if (ok) {
          QModule mod(alg, dims, std::move(acts));
          if (detail::support_connected(mod) && is_indecomposable(mod, budget)) {
            bool seen = false;
            for (const auto& e : found_here)
              if (is_isomorphic(e, mod, budget)) { seen = true; break; }
            if (!seen) found_here.push_back(std::move(mod));
          }
        }
        int i = free_entries - 1;
        while (i >= 0 && ++digits[i] == p) digits[i--] = 0;
        if (i < 0) break;
      }
      int a = q.arrow_count() - 1;
      for (; a >= 0; --a) {
        if (!normal[a]) continue;
        const auto& ar = q.arrows[a];
        if (++ranks[a] <= std::min(dims[ar.target], dims[ar.source])) break;
        ranks[a] = 0;
      }
      if (a < 0) break;
    }
    for (auto& m : found_here) entries.push_back(std::move(m));
  }
  return IsoCatalog(alg, bounds, std::move(entries));
}

/// Multiset (sorted) of catalog ids with direct_sum(ids) isomorphic to m.
/// Splits along nontrivial idempotents of End(m); pieces are matched
/// against the catalog.
inline std::vector<int> decompose(const IsoCatalog& cat, const QModule& m, const SearchBudget& budget = SearchBudget::from_env()) {
  if (m.algebra_ptr() != cat.algebra_ptr()) fail(ErrorKind::InvalidInput, "decompose: module over a different algebra");
  std::vector<int> ids;
  std::vector<QModule> todo{m};
  while (!todo.empty()) {
    QModule cur = std::move(todo.back());
    todo.pop_back();
    if (cur.is_zero()) continue;
    if (auto id = cat.find(cur, budget)) {
      ids.push_back(*id);
      continue;
    }
    auto eps = find_nontrivial_idempotent(cur, budget);
    if (!eps) fail(ErrorKind::OutOfCatalog, "indecomposable summand with dimension vector " + dim_vector_string(cur.dims()) + " is not in the catalog");
    auto [a, b] = split_by_idempotent(*eps);
    todo.push_back(std::move(a));
    todo.push_back(std::move(b));
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

/// Direct sum of catalog entries, one summand per listed id.
inline QModule catalog_sum(const IsoCatalog& cat, const std::vector<int>& ids) {
  std::vector<QModule> parts;
  for (int id : ids) parts.push_back(cat[id]);
  return direct_sum(cat.algebra_ptr(), parts);
}

}  // namespace widerec
