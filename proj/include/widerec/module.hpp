#pragma once

// Finite-dimensional right modules over a presented algebra, stored as quiver
// representations: the action of an arrow s -> t is a dims[t] x dims[s] matrix.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "widerec/algebra.hpp"
#include "widerec/errors.hpp"
#include "widerec/linalg.hpp"

namespace widerec {

/// Cap on exhaustive hom-space enumerations (p^dim candidates).
struct SearchBudget {
  std::uint64_t max_combinations = std::uint64_t{1} << 20;

  /// Default budget, overridden by the WIDEREC_BUDGET environment variable.
  static SearchBudget from_env() {
    SearchBudget b;
    if (const char* env = std::getenv("WIDEREC_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) b.max_combinations = v;
    }
    return b;
  }

  /// p^d if it fits under the cap, otherwise nullopt.
  std::optional<std::uint64_t> combinations(int p, int d) const {
    std::uint64_t n = 1;
    for (int i = 0; i < d; ++i) {
      n *= static_cast<std::uint64_t>(p);
      if (n > max_combinations) return std::nullopt;
    }
    return n;
  }
};

class QModule {
 public:
  QModule() = default;

  QModule(AlgebraPtr alg, std::vector<int> dims, std::vector<Mat> actions)
      : alg_(std::move(alg)), dims_(std::move(dims)), actions_(std::move(actions)) {
    validate();
  }

  static QModule zero(AlgebraPtr alg) {
    const auto& q = alg->quiver();
    std::vector<Mat> acts;
    for (int a = 0; a < q.arrow_count(); ++a) acts.emplace_back(0, 0, alg->field());
    return QModule(alg, std::vector<int>(q.vertex_count(), 0), std::move(acts));
  }

  const AlgebraPtr& algebra_ptr() const noexcept { return alg_; }
  const PresentedAlgebra& algebra() const noexcept { return *alg_; }
  const Field& field() const noexcept { return alg_->field(); }
  const std::vector<int>& dims() const noexcept { return dims_; }
  int dim(int v) const { return dims_[v]; }
  int total_dim() const noexcept {
    int s = 0;
    for (int d : dims_) s += d;
    return s;
  }
  bool is_zero() const noexcept { return total_dim() == 0; }
  const Mat& action(int arrow) const { return actions_[arrow]; }
  const std::vector<Mat>& actions() const noexcept { return actions_; }

  /// Action of a path: dims[target] x dims[source].
  Mat path_action(const Path& p) const {
    Mat m = Mat::identity(dims_[p.source], field());
    for (int a : p.arrows) m = actions_[a] * m;
    return m;
  }

  Mat basis_action(int i) const { return path_action(alg_->basis()[i]); }

  /// Action of the s -> t block of an algebra element.
  Mat element_action(const Vec& x, int s, int t) const {
    Mat m(dims_[t], dims_[s], field());
    for (int i : alg_->basis_between(s, t))
      if (x[i]) m += x[i] * basis_action(i);
    return m;
  }

  bool satisfies_relations() const {
    for (const auto& rel : alg_->relations()) {
      const Path& first = rel.front().path;
      Mat m(dims_[first.target], dims_[first.source], field());
      for (const auto& t : rel) m += t.coeff * path_action(t.path);
      if (!m.is_zero()) return false;
    }
    return true;
  }

  friend bool operator==(const QModule& a, const QModule& b) {
    return a.alg_ == b.alg_ && a.dims_ == b.dims_ && a.actions_ == b.actions_;
  }

 private:
  void validate() const {
    if (!alg_) fail(ErrorKind::InvalidModule, "module without algebra");
    const auto& q = alg_->quiver();
    if (static_cast<int>(dims_.size()) != q.vertex_count()) fail(ErrorKind::InvalidModule, "dimension vector has wrong length");
    if (static_cast<int>(actions_.size()) != q.arrow_count()) fail(ErrorKind::InvalidModule, "wrong number of arrow actions");
    for (int d : dims_)
      if (d < 0) fail(ErrorKind::InvalidModule, "negative dimension");
    for (int a = 0; a < q.arrow_count(); ++a) {
      const auto& ar = q.arrows[a];
      if (actions_[a].rows() != dims_[ar.target] || actions_[a].cols() != dims_[ar.source])
        fail(ErrorKind::InvalidModule, "action of arrow '" + ar.name + "' has the wrong shape");
      if (actions_[a].p() != alg_->field().p()) fail(ErrorKind::InvalidModule, "action over the wrong field");
    }
    if (!satisfies_relations()) fail(ErrorKind::InvalidModule, "module does not satisfy the relations");
  }

  AlgebraPtr alg_;
  std::vector<int> dims_;
  std::vector<Mat> actions_;
};

inline bool same_algebra(const QModule& a, const QModule& b) { return a.algebra_ptr() == b.algebra_ptr(); }

class ModuleMap {
 public:
  ModuleMap() = default;
  ModuleMap(QModule source, QModule target, std::vector<Mat> comps)
      : source_(std::move(source)), target_(std::move(target)), comps_(std::move(comps)) {
    validate();
  }

  static ModuleMap identity(const QModule& m) {
    std::vector<Mat> c;
    for (int d : m.dims()) c.push_back(Mat::identity(d, m.field()));
    return ModuleMap(m, m, std::move(c));
  }
  static ModuleMap zero(const QModule& m, const QModule& n) {
    std::vector<Mat> c;
    for (int v = 0; v < static_cast<int>(m.dims().size()); ++v) c.emplace_back(n.dim(v), m.dim(v), m.field());
    return ModuleMap(m, n, std::move(c));
  }

  const QModule& source() const noexcept { return source_; }
  const QModule& target() const noexcept { return target_; }
  const Mat& component(int v) const { return comps_[v]; }
  const std::vector<Mat>& components() const noexcept { return comps_; }

  bool is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const Mat& m) { return m.is_zero(); });
  }
  bool is_injective() const {
    for (const auto& c : comps_)
      if (rank(c) != c.cols()) return false;
    return true;
  }
  bool is_surjective() const {
    for (const auto& c : comps_)
      if (rank(c) != c.rows()) return false;
    return true;
  }
  bool is_isomorphism() const { return is_injective() && is_surjective(); }

  /// Row-major components concatenated by vertex.
  Vec flatten() const {
    Vec out;
    for (const auto& c : comps_) out.insert(out.end(), c.entries().begin(), c.entries().end());
    return out;
  }

  friend bool operator==(const ModuleMap& a, const ModuleMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.comps_ == b.comps_;
  }

 private:
  void validate() const {
    if (!same_algebra(source_, target_)) fail(ErrorKind::InvalidModule, "map between modules over different algebras");
    const auto& q = source_.algebra().quiver();
    if (static_cast<int>(comps_.size()) != q.vertex_count()) fail(ErrorKind::InvalidModule, "map has wrong number of components");
    for (int v = 0; v < q.vertex_count(); ++v)
      if (comps_[v].rows() != target_.dim(v) || comps_[v].cols() != source_.dim(v))
        fail(ErrorKind::InvalidModule, "map component has the wrong shape");
    for (int a = 0; a < q.arrow_count(); ++a) {
      const auto& ar = q.arrows[a];
      if (!(target_.action(a) * comps_[ar.source] == comps_[ar.target] * source_.action(a)))
        fail(ErrorKind::InvalidModule, "map does not commute with arrow '" + ar.name + "'");
    }
  }

  QModule source_;
  QModule target_;
  std::vector<Mat> comps_;
};

inline ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (!(f.target() == g.source())) fail(ErrorKind::Internal, "composing non-composable maps");
  std::vector<Mat> c;
  for (std::size_t v = 0; v < f.components().size(); ++v) c.push_back(g.component(static_cast<int>(v)) * f.component(static_cast<int>(v)));
  return ModuleMap(f.source(), g.target(), std::move(c));
}

inline ModuleMap linear_combination(const std::vector<ModuleMap>& maps, const Vec& coeffs, const QModule& src, const QModule& tgt) {
  ModuleMap z = ModuleMap::zero(src, tgt);
  std::vector<Mat> c = z.components();
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (coeffs[i] == 0) continue;
    for (std::size_t v = 0; v < c.size(); ++v) c[v] += coeffs[i] * maps[i].component(static_cast<int>(v));
  }
  return ModuleMap(src, tgt, std::move(c));
}

// --- hom spaces ------------------------------------------------------------

namespace detail {

/// Linear system whose null space is Hom(M, N), unknowns ordered as in
/// ModuleMap::flatten.
inline Mat hom_system(const QModule& m, const QModule& n) {
  const auto& q = m.algebra().quiver();
  const int nv = q.vertex_count();
  std::vector<int> off(nv + 1, 0);
  for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + n.dim(v) * m.dim(v);
  int eqs = 0;
  for (const auto& ar : q.arrows) eqs += n.dim(ar.target) * m.dim(ar.source);
  Mat sys(eqs, off[nv], m.field());
  const Field& f = m.field();
  int row = 0;
  for (int a = 0; a < q.arrow_count(); ++a) {
    const int s = q.arrows[a].source, t = q.arrows[a].target;
    const Mat& na = n.action(a);
    const Mat& ma = m.action(a);
    const int dms = m.dim(s), dmt = m.dim(t);
    // (N_a F_s - F_t M_a)(i, j) = 0
    for (int i = 0; i < n.dim(t); ++i)
      for (int j = 0; j < dms; ++j, ++row) {
        for (int k = 0; k < n.dim(s); ++k)
          if (na(i, k)) sys(row, off[s] + k * dms + j) = f.add(sys(row, off[s] + k * dms + j), na(i, k));
        for (int k = 0; k < dmt; ++k)
          if (ma(k, j)) sys(row, off[t] + i * dmt + k) = f.sub(sys(row, off[t] + i * dmt + k), ma(k, j));
      }
  }
  return sys;
}

inline std::vector<Mat> unflatten(const Vec& x, const QModule& m, const QModule& n) {
  std::vector<Mat> comps;
  std::size_t pos = 0;
  for (int v = 0; v < static_cast<int>(m.dims().size()); ++v) {
    const int r = n.dim(v), c = m.dim(v);
    std::vector<int> e(x.begin() + static_cast<std::ptrdiff_t>(pos), x.begin() + static_cast<std::ptrdiff_t>(pos + r * c));
    comps.emplace_back(r, c, m.field(), std::move(e));
    pos += static_cast<std::size_t>(r) * c;
  }
  return comps;
}

}  // namespace detail

inline std::vector<ModuleMap> hom_space(const QModule& m, const QModule& n) {
  if (!same_algebra(m, n)) fail(ErrorKind::InvalidInput, "hom_space between modules over different algebras");
  std::vector<ModuleMap> out;
  for (const auto& v : kernel_basis(detail::hom_system(m, n))) out.emplace_back(m, n, detail::unflatten(v, m, n));
  return out;
}

inline int hom_dim(const QModule& m, const QModule& n) {
  if (!same_algebra(m, n)) fail(ErrorKind::InvalidInput, "hom_dim between modules over different algebras");
  Mat sys = detail::hom_system(m, n);
  return sys.cols() - rank(sys);
}

/// Coordinates of a map in a hom basis (columns of flattened basis maps).
inline Vec hom_coordinates(const std::vector<ModuleMap>& basis, const ModuleMap& f) {
  Vec flat = f.flatten();
  std::vector<Vec> cols;
  for (const auto& b : basis) cols.push_back(b.flatten());
  Mat bm = columns_to_mat(cols, static_cast<int>(flat.size()), f.source().field());
  auto x = solve(bm, flat);
  if (!x) fail(ErrorKind::Internal, "map outside the hom space");
  return *x;
}

enum class SearchResult { Found, Exhausted, OverBudget };

/// Visits every GF(p)-combination of the basis maps (as component lists),
/// stopping when visit returns true. Each step adds one basis element, so the
/// whole sweep costs O(p^d) matrix additions.
inline SearchResult for_each_combination(const std::vector<ModuleMap>& basis, const QModule& src, const QModule& tgt,
                                         const SearchBudget& budget, const std::function<bool(const std::vector<Mat>&)>& visit) {
  const int d = static_cast<int>(basis.size());
  const int p = src.field().p();
  if (!budget.combinations(p, d)) return SearchResult::OverBudget;
  std::vector<Mat> cur = ModuleMap::zero(src, tgt).components();
  std::vector<int> digit(d, 0);
  while (true) {
    if (visit(cur)) return SearchResult::Found;
    int i = 0;
    while (i < d) {
      for (std::size_t v = 0; v < cur.size(); ++v) cur[v] += basis[i].component(static_cast<int>(v));
      if (++digit[i] < p) break;
      digit[i] = 0;  // p additions returned this slot to zero
      ++i;
    }
    if (i == d) return SearchResult::Exhausted;
  }
}

// --- kernels, cokernels, images --------------------------------------------

struct SubObject {
  QModule object;
  ModuleMap inclusion;
};

struct QuotientObject {
  QModule object;
  ModuleMap projection;
};

/// Submodule spanned vertexwise by the independent columns of basis[v]; the
/// spans must be closed under the arrow actions.
inline SubObject submodule(const QModule& m, const std::vector<Mat>& basis) {
  const auto& q = m.algebra().quiver();
  std::vector<int> dims;
  for (const auto& b : basis) dims.push_back(b.cols());
  std::vector<Mat> acts;
  for (int a = 0; a < q.arrow_count(); ++a) {
    const auto& ar = q.arrows[a];
    acts.push_back(coordinates_in(basis[ar.target], m.action(a) * basis[ar.source]));
  }
  QModule sub(m.algebra_ptr(), std::move(dims), std::move(acts));
  ModuleMap inc(sub, m, basis);
  return {std::move(sub), std::move(inc)};
}

/// Quotient of m by the submodule spanned vertexwise by the columns of span[v].
inline QuotientObject quotient_module(const QModule& m, const std::vector<Mat>& span) {
  const auto& q = m.algebra().quiver();
  std::vector<Quotient> qs;
  for (const auto& s : span) qs.push_back(quotient_by(s));
  std::vector<int> dims;
  for (const auto& x : qs) dims.push_back(x.dim());
  std::vector<Mat> acts;
  for (int a = 0; a < q.arrow_count(); ++a) {
    const auto& ar = q.arrows[a];
    acts.push_back(qs[ar.target].proj * m.action(a) * qs[ar.source].lift);
  }
  QModule quo(m.algebra_ptr(), std::move(dims), std::move(acts));
  std::vector<Mat> comps;
  for (const auto& x : qs) comps.push_back(x.proj);
  ModuleMap proj(m, quo, std::move(comps));
  return {std::move(quo), std::move(proj)};
}

inline SubObject kernel(const ModuleMap& f) {
  std::vector<Mat> basis;
  for (const auto& c : f.components()) basis.push_back(kernel_matrix(c));
  return submodule(f.source(), basis);
}

inline QuotientObject cokernel(const ModuleMap& f) { return quotient_module(f.target(), f.components()); }

inline SubObject image(const ModuleMap& f) {
  std::vector<Mat> basis;
  for (const auto& c : f.components()) basis.push_back(column_space(c));
  return submodule(f.target(), basis);
}

inline QModule direct_sum(const AlgebraPtr& alg, std::span<const QModule> ms) {
  const auto& q = alg->quiver();
  std::vector<int> dims(q.vertex_count(), 0);
  for (const auto& m : ms) {
    if (m.algebra_ptr() != alg) fail(ErrorKind::InvalidInput, "direct sum over mixed algebras");
    for (int v = 0; v < q.vertex_count(); ++v) dims[v] += m.dim(v);
  }
  std::vector<Mat> acts;
  for (int a = 0; a < q.arrow_count(); ++a) {
    std::vector<Mat> blocks;
    for (const auto& m : ms) blocks.push_back(m.action(a));
    acts.push_back(block_diag(blocks, alg->field()));
  }
  return QModule(alg, std::move(dims), std::move(acts));
}

inline QModule direct_sum(std::span<const QModule> ms) {
  if (ms.empty()) fail(ErrorKind::InvalidInput, "empty direct sum needs an explicit algebra");
  return direct_sum(ms.front().algebra_ptr(), ms);
}

// --- endomorphisms, indecomposability, isomorphism -------------------------

namespace detail {

inline Mat matrix_power(const Mat& m, int e) {
  Mat r = Mat::identity(m.rows(), m.field());
  for (int i = 0; i < e; ++i) r = r * m;
  return r;
}

}  // namespace detail

/// If the endomorphism (given by components) is neither nilpotent nor
/// invertible, returns the projection onto im(phi^n) along ker(phi^n), a
/// nontrivial idempotent. Otherwise nullopt.
inline std::optional<std::vector<Mat>> fitting_idempotent(const std::vector<Mat>& phi) {
  bool all_invertible = true, all_nilpotent = true;
  int n = 0;
  for (const auto& c : phi) n = std::max(n, c.rows());
  std::vector<Mat> powers;
  for (const auto& c : phi) {
    if (!is_invertible(c)) all_invertible = false;
    Mat pw = detail::matrix_power(c, n);
    if (!pw.is_zero()) all_nilpotent = false;
    powers.push_back(std::move(pw));
  }
  if (all_invertible || all_nilpotent) return std::nullopt;
  std::vector<Mat> eps;
  for (const auto& pw : powers) {
    const Field& f = pw.field();
    Mat im = column_space(pw);
    Mat ker = kernel_matrix(pw);
    std::vector<Mat> parts{im, ker};
    Mat b = hstack(parts, pw.rows(), f);
    Mat proj(pw.rows(), pw.rows(), f);
    for (int i = 0; i < im.cols(); ++i) proj(i, i) = 1;
    eps.push_back(pw.rows() == 0 ? Mat(0, 0, f) : b * proj * inverse(b));
  }
  return eps;
}

/// A nontrivial idempotent endomorphism of m, or nullopt if m is
/// indecomposable (or zero). Throws SearchBudgetExceeded when the exhaustive
/// sweep of End(m) is over budget and no cheap witness was found.
inline std::optional<ModuleMap> find_nontrivial_idempotent(const QModule& m, const SearchBudget& budget) {
  if (m.total_dim() <= 1) return std::nullopt;
  auto end = hom_space(m, m);
  if (end.size() <= 1) return std::nullopt;  // End(m) = K
  for (const auto& b : end)
    if (auto e = fitting_idempotent(b.components())) return ModuleMap(m, m, *e);
  for (std::size_t i = 0; i < end.size(); ++i)
    for (std::size_t j = i + 1; j < end.size(); ++j) {
      std::vector<Mat> c;
      for (std::size_t v = 0; v < end[i].components().size(); ++v)
        c.push_back(end[i].component(static_cast<int>(v)) + end[j].component(static_cast<int>(v)));
      if (auto e = fitting_idempotent(c)) return ModuleMap(m, m, *e);
    }
  std::optional<std::vector<Mat>> found;
  auto res = for_each_combination(end, m, m, budget, [&](const std::vector<Mat>& c) {
    found = fitting_idempotent(c);
    return found.has_value();
  });
  if (res == SearchResult::OverBudget)
    fail(ErrorKind::SearchBudgetExceeded, "End(M) of dimension " + std::to_string(end.size()) + " exceeds the search budget");
  if (found) return ModuleMap(m, m, *found);
  return std::nullopt;
}

inline bool is_indecomposable(const QModule& m, const SearchBudget& budget = SearchBudget::from_env()) {
  if (m.is_zero()) return false;
  return !find_nontrivial_idempotent(m, budget).has_value();
}

/// Splits m along a nontrivial idempotent into (image, kernel).
inline std::pair<QModule, QModule> split_by_idempotent(const ModuleMap& eps) {
  return {image(eps).object, kernel(eps).object};
}

inline bool is_isomorphic(const QModule& m, const QModule& n, const SearchBudget& budget = SearchBudget::from_env()) {
  if (!same_algebra(m, n)) fail(ErrorKind::InvalidInput, "is_isomorphic between modules over different algebras");
  if (m.dims() != n.dims()) return false;
  if (m.is_zero()) return true;
  if (m == n) return true;
  const auto& q = m.algebra().quiver();
  for (int a = 0; a < q.arrow_count(); ++a)
    if (rank(m.action(a)) != rank(n.action(a))) return false;
  auto hom = hom_space(m, n);
  const int d = static_cast<int>(hom.size());
  if (d == 0 || hom_dim(m, m) != d || hom_dim(n, n) != d) return false;
  for (const auto& b : hom)
    if (b.is_isomorphism()) return true;
  auto res = for_each_combination(hom, m, n, budget, [](const std::vector<Mat>& c) {
    for (const auto& x : c)
      if (!is_invertible(x)) return false;
    return true;
  });
  if (res == SearchResult::OverBudget)
    fail(ErrorKind::SearchBudgetExceeded, "Hom(M,N) of dimension " + std::to_string(d) + " exceeds the search budget");
  return res == SearchResult::Found;
}

// --- descriptive helpers ---------------------------------------------------

/// Radical layers of m: layer k has dimension vector dim(rad^k m) - dim(rad^{k+1} m).
inline std::vector<std::vector<int>> radical_layers(const QModule& m) {
  const auto& q = m.algebra().quiver();
  const int nv = q.vertex_count();
  std::vector<Mat> cur;
  for (int v = 0; v < nv; ++v) cur.push_back(Mat::identity(m.dim(v), m.field()));
  std::vector<std::vector<int>> layers;
  while (true) {
    std::vector<Mat> next;
    for (int v = 0; v < nv; ++v) {
      std::vector<Mat> gens{Mat(m.dim(v), 0, m.field())};
      for (int a = 0; a < q.arrow_count(); ++a)
        if (q.arrows[a].target == v) gens.push_back(m.action(a) * cur[q.arrows[a].source]);
      next.push_back(column_space(hstack(gens, m.dim(v), m.field())));
    }
    std::vector<int> layer(nv);
    bool empty = true;
    for (int v = 0; v < nv; ++v) {
      layer[v] = cur[v].cols() - next[v].cols();
      if (layer[v]) empty = false;
    }
    if (empty) break;
    layers.push_back(std::move(layer));
    cur = std::move(next);
  }
  return layers;
}

/// Human-readable Loewy label such as "2/13": top layer first.
inline std::string loewy_label(const QModule& m) {
  const auto& q = m.algebra().quiver();
  bool short_names = std::all_of(q.vertices.begin(), q.vertices.end(), [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (const auto& layer : radical_layers(m)) {
    if (!out.empty()) out += '/';
    std::string part;
    for (int v = 0; v < q.vertex_count(); ++v)
      for (int k = 0; k < layer[v]; ++k) {
        if (!short_names && !part.empty()) part += ',';
        part += q.vertices[v];
      }
    out += part;
  }
  return out.empty() ? "0" : out;
}

inline std::string dim_vector_string(const std::vector<int>& dims) {
  std::string s = "(";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(dims[i]);
  }
  return s + ")";
}

}  // namespace widerec
