#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "widerec/algebra.hpp"
#include "widerec/module.hpp"

namespace widerec::testing {

/// Quiver on vertices "1".."n" with arrows given as (source, target) pairs of
/// zero-based indices, named a, b, c, ...
inline Quiver quiver(int n, const std::vector<std::pair<int, int>>& arrows) {
  Quiver q;
  for (int v = 1; v <= n; ++v) q.vertices.push_back(std::to_string(v));
  char name = 'a';
  for (auto [s, t] : arrows) q.arrows.push_back(Arrow{std::string(1, name++), s, t});
  return q;
}

inline AlgebraPtr algebra(int n, const std::vector<std::pair<int, int>>& arrows, int p = 2,
                          std::vector<Relation> rels = {}) {
  return path_algebra(quiver(n, arrows), std::move(rels), Field(p));
}

/// Zero relation for the path x then y.
inline Relation zero_path(const Quiver& q, int x, int y) {
  return {Term{1, Path{q.arrows[x].source, q.arrows[y].target, {x, y}}}};
}

/// The A3 quiver 1 <- 2 -> 3.
inline AlgebraPtr a3_sink_source(int p = 2) { return algebra(3, {{1, 0}, {1, 2}}, p); }

inline Mat random_mat(std::mt19937_64& rng, int rows, int cols, const Field& f) {
  Mat m(rows, cols, f);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = static_cast<int>(rng() % static_cast<unsigned>(f.p()));
  return m;
}

/// All vectors of GF(p)^n, in base-p counting order.
inline std::vector<Vec> all_vectors(int n, int p) {
  std::vector<Vec> out;
  Vec v(n, 0);
  while (true) {
    out.push_back(v);
    int i = 0;
    while (i < n && ++v[i] == p) v[i++] = 0;
    if (i == n) return out;
  }
}

/// Representation given by one matrix per arrow; dims are read off the shapes.
inline QModule rep(const AlgebraPtr& alg, std::vector<int> dims, std::vector<std::vector<int>> entries) {
  const auto& q = alg->quiver();
  std::vector<Mat> acts;
  for (int a = 0; a < q.arrow_count(); ++a)
    acts.emplace_back(dims[q.arrows[a].target], dims[q.arrows[a].source], alg->field(), entries[a]);
  return QModule(alg, std::move(dims), std::move(acts));
}

}  // namespace widerec::testing
