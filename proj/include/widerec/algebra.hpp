#pragma once

// Finite-dimensional basic algebras presented by an acyclic quiver with
// admissible relations.
//
// Paths are written in traversal order: the path a*b first follows a, then b,
// so a path from s to t satisfies p = e_s p e_t. Right modules over such an
// algebra are representations of the quiver in which an arrow s -> t maps the
// component at s to the component at t.

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "widerec/errors.hpp"
#include "widerec/linalg.hpp"

namespace widerec {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int vertex_count() const noexcept { return static_cast<int>(vertices.size()); }
  int arrow_count() const noexcept { return static_cast<int>(arrows.size()); }

  int vertex_index(std::string_view name) const {
    for (int i = 0; i < vertex_count(); ++i)
      if (vertices[i] == name) return i;
    fail(ErrorKind::InvalidInput, "unknown vertex '" + std::string(name) + "'");
  }
  int arrow_index(std::string_view name) const {
    for (int i = 0; i < arrow_count(); ++i)
      if (arrows[i].name == name) return i;
    fail(ErrorKind::InvalidInput, "unknown arrow '" + std::string(name) + "'");
  }

  /// Vertex order compatible with the arrows (sources first). Throws
  /// CyclicQuiver if there is an oriented cycle.
  std::vector<int> topological_order() const {
    std::vector<int> indeg(vertices.size(), 0);
    for (const auto& a : arrows) ++indeg[a.target];
    std::vector<int> order, ready;
    for (int v = vertex_count() - 1; v >= 0; --v)
      if (indeg[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
      int v = ready.back();
      ready.pop_back();
      order.push_back(v);
      for (const auto& a : arrows)
        if (a.source == v && --indeg[a.target] == 0) ready.push_back(a.target);
    }
    if (static_cast<int>(order.size()) != vertex_count()) fail(ErrorKind::CyclicQuiver, "quiver has an oriented cycle");
    return order;
  }

  void validate() const {
    std::set<std::string> names(vertices.begin(), vertices.end());
    if (names.size() != vertices.size()) fail(ErrorKind::InvalidInput, "duplicate vertex id");
    std::set<std::string> anames;
    for (const auto& a : arrows) {
      if (!anames.insert(a.name).second) fail(ErrorKind::InvalidInput, "duplicate arrow name '" + a.name + "'");
      if (a.source < 0 || a.source >= vertex_count() || a.target < 0 || a.target >= vertex_count())
        fail(ErrorKind::InvalidInput, "arrow '" + a.name + "' has an endpoint outside the vertex set");
    }
    topological_order();
  }
};

struct Path {
  int source = 0;
  int target = 0;
  std::vector<int> arrows;  // traversal order

  int length() const noexcept { return static_cast<int>(arrows.size()); }
  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

struct Term {
  int coeff = 1;
  Path path;
};
using Relation = std::vector<Term>;

inline Path trivial_path(int v) { return Path{v, v, {}}; }

inline Path concat(const Path& x, const Path& y) {
  if (x.target != y.source) fail(ErrorKind::Internal, "concatenating non-composable paths");
  Path out{x.source, y.target, x.arrows};
  out.arrows.insert(out.arrows.end(), y.arrows.begin(), y.arrows.end());
  return out;
}

inline std::string path_label(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return "e" + q.vertices[p.source];
  std::string s;
  for (std::size_t i = 0; i < p.arrows.size(); ++i) {
    if (i) s += '*';
    s += q.arrows[p.arrows[i]].name;
  }
  return s;
}

/// All paths of an acyclic quiver, trivial paths included.
inline std::vector<Path> all_paths(const Quiver& q, std::size_t cap = 200000) {
  std::vector<Path> out;
  std::vector<Path> frontier;
  for (int v = 0; v < q.vertex_count(); ++v) frontier.push_back(trivial_path(v));
  while (!frontier.empty()) {
    std::vector<Path> next;
    for (auto& p : frontier) {
      for (int a = 0; a < q.arrow_count(); ++a) {
        if (q.arrows[a].source != p.target) continue;
        Path np = p;
        np.arrows.push_back(a);
        np.target = q.arrows[a].target;
        next.push_back(std::move(np));
      }
      out.push_back(std::move(p));
      if (out.size() > cap) fail(ErrorKind::SearchBudgetExceeded, "too many paths in quiver");
    }
    frontier = std::move(next);
  }
  return out;
}

class PresentedAlgebra;
using AlgebraPtr = std::shared_ptr<const PresentedAlgebra>;

inline AlgebraPtr path_algebra(Quiver q, std::vector<Relation> rels, Field f);

class PresentedAlgebra {
 public:
  const Quiver& quiver() const noexcept { return quiver_; }
  const std::vector<Relation>& relations() const noexcept { return relations_; }
  const Field& field() const noexcept { return field_; }
  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  int vertex_count() const noexcept { return quiver_.vertex_count(); }

  /// Basis path classes; indices [0, vertex_count) are the vertex idempotents.
  const std::vector<Path>& basis() const noexcept { return basis_; }
  std::string label(int i) const { return path_label(quiver_, basis_[i]); }

  /// Structure constants: basis[i] * basis[j] as a coordinate vector.
  const Vec& product(int i, int j) const { return mult_[static_cast<std::size_t>(i) * dim() + j]; }

  /// Basis indices of path classes from s to t.
  const std::vector<int>& basis_between(int s, int t) const { return between_[static_cast<std::size_t>(s) * vertex_count() + t]; }

  /// Nilpotency index of the radical: rad^k = 0 for k = loewy_length().
  int loewy_length() const noexcept { return loewy_; }

  Vec zero() const { return Vec(dim(), 0); }
  Vec unit_vector(int i) const {
    Vec v(dim(), 0);
    v[i] = 1;
    return v;
  }
  Vec idempotent(int v) const { return unit_vector(v); }
  Vec one() const {
    Vec v(dim(), 0);
    for (int i = 0; i < vertex_count(); ++i) v[i] = 1;
    return v;
  }

  Vec multiply(const Vec& x, const Vec& y) const {
    Vec out(dim(), 0);
    const int p = field_.p();
    for (int i = 0; i < dim(); ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < dim(); ++j) {
        if (y[j] == 0) continue;
        int c = field_.mul(x[i], y[j]);
        const Vec& pr = product(i, j);
        for (int k = 0; k < dim(); ++k)
          if (pr[k]) out[k] = (out[k] + c * pr[k]) % p;
      }
    }
    return out;
  }

  /// Class of a path in the basis.
  Vec reduce(const Path& path) const {
    auto it = path_pos_.find(path);
    if (it == path_pos_.end()) fail(ErrorKind::InvalidInput, "path is not a path of the quiver");
    return reductions_[it->second];
  }

  Vec reduce(const Relation& rel) const {
    Vec out(dim(), 0);
    for (const auto& t : rel) {
      Vec r = reduce(t.path);
      for (int k = 0; k < dim(); ++k) out[k] = field_.add(out[k], field_.mul(field_.reduce(t.coeff), r[k]));
    }
    return out;
  }

  friend AlgebraPtr path_algebra(Quiver q, std::vector<Relation> rels, Field f);

 private:
  PresentedAlgebra() = default;

  Quiver quiver_;
  std::vector<Relation> relations_;
  Field field_{2};
  std::vector<Path> basis_;
  std::vector<Vec> mult_;
  std::vector<std::vector<int>> between_;
  std::map<Path, int> path_pos_;
  std::vector<Vec> reductions_;
  int loewy_ = 0;
};

namespace detail {

inline void validate_relations(const Quiver& q, std::vector<Relation>& rels, const Field& f) {
  for (auto& rel : rels) {
    if (rel.empty()) fail(ErrorKind::NonAdmissibleRelations, "empty relation");
    for (auto& t : rel) {
      t.coeff = f.reduce(t.coeff);
      const Path& p = t.path;
      if (p.length() < 2) fail(ErrorKind::NonAdmissibleRelations, "relation term of length < 2");
      for (int a : p.arrows)
        if (a < 0 || a >= q.arrow_count()) fail(ErrorKind::NonAdmissibleRelations, "relation uses an unknown arrow");
      if (q.arrows[p.arrows.front()].source != p.source || q.arrows[p.arrows.back()].target != p.target)
        fail(ErrorKind::NonAdmissibleRelations, "relation path endpoints inconsistent");
      for (std::size_t i = 1; i < p.arrows.size(); ++i)
        if (q.arrows[p.arrows[i - 1]].target != q.arrows[p.arrows[i]].source)
          fail(ErrorKind::NonAdmissibleRelations, "relation path is not composable");
      if (p.source != rel.front().path.source || p.target != rel.front().path.target)
        fail(ErrorKind::NonAdmissibleRelations, "relation mixes non-parallel paths");
    }
  }
}

}  // namespace detail

/// Builds KQ / I where I is the ideal generated by the relations. The basis
/// consists of path classes: within each (source, target) block, longer paths
/// are eliminated first, so shorter paths are preferred as representatives.
inline AlgebraPtr path_algebra(Quiver q, std::vector<Relation> rels, Field f) {
  q.validate();
  detail::validate_relations(q, rels, f);

  auto alg = std::shared_ptr<PresentedAlgebra>(new PresentedAlgebra());
  const int n = q.vertex_count();
  std::vector<Path> paths = all_paths(q);

  // group into blocks, longest paths first
  std::vector<std::vector<Path>> blocks(static_cast<std::size_t>(n) * n);
  for (const auto& p : paths) blocks[static_cast<std::size_t>(p.source) * n + p.target].push_back(p);
  for (auto& b : blocks)
    std::sort(b.begin(), b.end(), [](const Path& x, const Path& y) {
      if (x.length() != y.length()) return x.length() > y.length();
      return x.arrows < y.arrows;
    });

  // paths into / out of each vertex, for generating the ideal
  std::vector<std::vector<const Path*>> ending_at(n), starting_at(n);
  for (const auto& p : paths) {
    ending_at[p.target].push_back(&p);
    starting_at[p.source].push_back(&p);
  }

  struct BlockInfo {
    Rref ideal;
    std::vector<int> free_cols;
  };
  std::vector<BlockInfo> info(blocks.size());
  std::vector<Path> basis;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& bp = blocks[bi];
    if (bp.empty()) continue;
    const int s = static_cast<int>(bi) / n, t = static_cast<int>(bi) % n;
    std::map<std::vector<int>, int> col;
    for (int c = 0; c < static_cast<int>(bp.size()); ++c) col[bp[c].arrows] = c;
    std::vector<Vec> rows;
    for (const auto& rel : rels) {
      const int rs = rel.front().path.source, rt = rel.front().path.target;
      for (const Path* u : ending_at[rs]) {
        if (u->source != s) continue;
        for (const Path* w : starting_at[rt]) {
          if (w->target != t) continue;
          Vec row(bp.size(), 0);
          for (const auto& term : rel) {
            Path full = concat(concat(*u, term.path), *w);
            int c = col.at(full.arrows);
            row[c] = f.add(row[c], term.coeff);
          }
          rows.push_back(std::move(row));
        }
      }
    }
    Mat im(static_cast<int>(rows.size()), static_cast<int>(bp.size()), f);
    for (int r = 0; r < im.rows(); ++r)
      for (int c = 0; c < im.cols(); ++c) im(r, c) = rows[r][c];
    info[bi].ideal = rref(im);
    std::vector<char> piv(bp.size(), 0);
    for (int c : info[bi].ideal.pivots) piv[c] = 1;
    for (int c = 0; c < static_cast<int>(bp.size()); ++c)
      if (!piv[c]) {
        info[bi].free_cols.push_back(c);
        basis.push_back(bp[c]);
      }
  }

  std::sort(basis.begin(), basis.end(), [](const Path& x, const Path& y) {
    if (x.length() != y.length()) return x.length() < y.length();
    if (x.source != y.source) return x.source < y.source;
    if (x.target != y.target) return x.target < y.target;
    return x.arrows < y.arrows;
  });
  std::map<Path, int> basis_pos;
  for (int i = 0; i < static_cast<int>(basis.size()); ++i) basis_pos[basis[i]] = i;
  const int d = static_cast<int>(basis.size());

  // reductions of every path
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& bp = blocks[bi];
    const auto& inf = info[bi];
    std::vector<int> pivot_row(bp.size(), -1);
    for (int r = 0; r < inf.ideal.rank(); ++r) pivot_row[inf.ideal.pivots[r]] = r;
    for (int c = 0; c < static_cast<int>(bp.size()); ++c) {
      Vec v(d, 0);
      if (pivot_row[c] < 0) {
        v[basis_pos.at(bp[c])] = 1;
      } else {
        int r = pivot_row[c];
        for (int fc : inf.free_cols) {
          int coef = inf.ideal.reduced(r, fc);
          if (coef) v[basis_pos.at(bp[fc])] = f.neg(coef);
        }
      }
      alg->path_pos_[bp[c]] = static_cast<int>(alg->reductions_.size());
      alg->reductions_.push_back(std::move(v));
    }
  }

  alg->quiver_ = std::move(q);
  alg->relations_ = std::move(rels);
  alg->field_ = f;
  alg->basis_ = std::move(basis);
  alg->between_.assign(static_cast<std::size_t>(n) * n, {});
  for (int i = 0; i < d; ++i) alg->between_[static_cast<std::size_t>(alg->basis_[i].source) * n + alg->basis_[i].target].push_back(i);

  alg->mult_.assign(static_cast<std::size_t>(d) * d, Vec(d, 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (alg->basis_[i].target == alg->basis_[j].source)
        alg->mult_[static_cast<std::size_t>(i) * d + j] = alg->reduce(concat(alg->basis_[i], alg->basis_[j]));

  // associativity on all basis triples
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        Vec left = alg->multiply(alg->product(i, j), alg->unit_vector(k));
        Vec right = alg->multiply(alg->unit_vector(i), alg->product(j, k));
        if (left != right) fail(ErrorKind::Internal, "structure constants are not associative");
      }

  // orthogonal idempotents summing to one
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w) {
      Vec expect = v == w ? alg->idempotent(v) : alg->zero();
      if (alg->product(v, w) != expect) fail(ErrorKind::Internal, "vertex idempotents are not orthogonal");
    }
  for (int i = 0; i < d; ++i) {
    if (alg->multiply(alg->one(), alg->unit_vector(i)) != alg->unit_vector(i) ||
        alg->multiply(alg->unit_vector(i), alg->one()) != alg->unit_vector(i))
      fail(ErrorKind::Internal, "sum of vertex idempotents is not the unit");
  }

  // radical nilpotency: rad^k = 0 for some k <= d + 1
  std::vector<int> rad;
  for (int i = n; i < d; ++i) rad.push_back(i);
  std::vector<Vec> power;
  for (int i : rad) power.push_back(alg->unit_vector(i));
  int loewy = 1;
  while (!power.empty()) {
    if (loewy > d + 1) fail(ErrorKind::Internal, "radical is not nilpotent");
    std::vector<Vec> next;
    for (const auto& x : power)
      for (int i : rad) {
        Vec y = alg->multiply(x, alg->unit_vector(i));
        if (std::any_of(y.begin(), y.end(), [](int c) { return c != 0; })) next.push_back(std::move(y));
      }
    if (!next.empty()) {
      Mat m = columns_to_mat(next, d, f);
      Mat basis_cols = column_space(m);
      power.clear();
      for (int c = 0; c < basis_cols.cols(); ++c) power.push_back(basis_cols.col(c));
    } else {
      power.clear();
    }
    ++loewy;
  }
  alg->loewy_ = n == 0 ? 0 : loewy;
  return alg;
}

/// Vertex subset defining e = sum of the chosen vertex idempotents.
struct Idem {
  std::vector<int> vertices;  // sorted indices into the ambient quiver

  static Idem from_names(const Quiver& q, const std::vector<std::string>& names) {
    Idem e;
    for (const auto& nm : names) e.vertices.push_back(q.vertex_index(nm));
    std::sort(e.vertices.begin(), e.vertices.end());
    e.vertices.erase(std::unique(e.vertices.begin(), e.vertices.end()), e.vertices.end());
    if (e.vertices.empty()) fail(ErrorKind::InvalidInput, "idempotent must contain at least one vertex");
    return e;
  }

  bool contains(int v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }
  bool covers_all(const Quiver& q) const { return static_cast<int>(vertices.size()) == q.vertex_count(); }
};

/// Lambda / Lambda e Lambda presented on the full subquiver of vertices outside e.
struct QuotientAlgebra {
  AlgebraPtr algebra;
  std::vector<int> vertex_map;  // quotient vertex -> ambient vertex
  std::vector<int> arrow_map;   // quotient arrow -> ambient arrow
  bool degenerate = false;      // e covers every vertex; quotient is zero
};

inline bool path_avoids(const Path& p, const Quiver& q, const Idem& e) {
  if (e.contains(p.source)) return false;
  for (int a : p.arrows)
    if (e.contains(q.arrows[a].target)) return false;
  return true;
}

inline QuotientAlgebra quotient_by_idempotent_ideal(const PresentedAlgebra& alg, const Idem& e) {
  const Quiver& q = alg.quiver();
  const Field& f = alg.field();
  QuotientAlgebra out;
  Quiver sub;
  std::vector<int> new_index(q.vertex_count(), -1);
  for (int v = 0; v < q.vertex_count(); ++v)
    if (!e.contains(v)) {
      new_index[v] = sub.vertex_count();
      sub.vertices.push_back(q.vertices[v]);
      out.vertex_map.push_back(v);
    }
  std::vector<int> new_arrow(q.arrow_count(), -1);
  for (int a = 0; a < q.arrow_count(); ++a) {
    const auto& ar = q.arrows[a];
    if (new_index[ar.source] >= 0 && new_index[ar.target] >= 0) {
      new_arrow[a] = sub.arrow_count();
      sub.arrows.push_back(Arrow{ar.name, new_index[ar.source], new_index[ar.target]});
      out.arrow_map.push_back(a);
    }
  }
  out.degenerate = sub.vertices.empty();

  // The kernel of K(sub) -> Lambda/LambdaeLambda is the projection of the
  // relation ideal onto paths avoiding e: paths through e are already zero.
  std::vector<Path> paths = all_paths(q);
  std::vector<Relation> rels;
  const int n = q.vertex_count();
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (e.contains(s) || e.contains(t)) continue;
      std::vector<Path> avoid;
      for (const auto& p : paths)
        if (p.source == s && p.target == t && path_avoids(p, q, e)) avoid.push_back(p);
      if (avoid.empty()) continue;
      // relation vectors: p - reduce(p) expressed over avoiding paths
      std::vector<Vec> rows;
      const auto& bb = alg.basis_between(s, t);
      // A combination sum c_p p (p avoiding) lies in I + LeL iff its image in
      // Lambda lies in the span of classes of through-e paths.
      std::vector<Vec> through;
      for (const auto& p : paths)
        if (p.source == s && p.target == t && !path_avoids(p, q, e)) through.push_back(alg.reduce(p));
      // unknowns: coefficients on avoiding paths and on through paths
      const int na = static_cast<int>(avoid.size()), nt = static_cast<int>(through.size());
      Mat sys(static_cast<int>(bb.size()), na + nt, f);
      for (int c = 0; c < na; ++c) {
        Vec r = alg.reduce(avoid[c]);
        for (int k = 0; k < static_cast<int>(bb.size()); ++k) sys(k, c) = r[bb[k]];
      }
      for (int c = 0; c < nt; ++c)
        for (int k = 0; k < static_cast<int>(bb.size()); ++k) sys(k, na + c) = through[c][bb[k]];
      for (const auto& kv : kernel_basis(sys)) {
        Relation rel;
        for (int c = 0; c < na; ++c) {
          if (kv[c] == 0) continue;
          Path np{new_index[s], new_index[t], {}};
          for (int a : avoid[c].arrows) np.arrows.push_back(new_arrow[a]);
          rel.push_back(Term{kv[c], np});
        }
        if (rel.empty()) continue;
        for (const auto& term : rel)
          if (term.path.length() < 2) fail(ErrorKind::Internal, "quotient relation of length < 2");
        rels.push_back(std::move(rel));
      }
    }
  out.algebra = path_algebra(std::move(sub), std::move(rels), f);
  return out;
}

/// Dimension of the two-sided ideal Lambda e Lambda.
inline int idempotent_ideal_dim(const PresentedAlgebra& alg, const Idem& e) {
  std::vector<Vec> gens;
  for (const auto& p : all_paths(alg.quiver()))
    if (!path_avoids(p, alg.quiver(), e)) gens.push_back(alg.reduce(p));
  if (gens.empty()) return 0;
  return rank(columns_to_mat(gens, alg.dim(), alg.field()));
}

/// e Lambda e re-presented by its own quiver with relations, together with the
/// embedding of its basis into Lambda.
struct CornerAlgebra {
  AlgebraPtr algebra;
  std::vector<int> vertex_map;   // corner vertex -> ambient vertex
  std::vector<Vec> embedding;    // corner basis index -> element of Lambda
  std::vector<Vec> arrow_images; // corner arrow -> element of Lambda
};

inline CornerAlgebra corner_algebra(const PresentedAlgebra& alg, const Idem& e) {
  const Field& f = alg.field();
  const Quiver& q = alg.quiver();
  const std::vector<int>& ev = e.vertices;
  const int m = static_cast<int>(ev.size());
  const int d = alg.dim();

  CornerAlgebra out;
  out.vertex_map = ev;
  Quiver cq;
  for (int v : ev) cq.vertices.push_back(q.vertices[v]);

  auto rad_block = [&](int a, int b) {
    std::vector<int> r;
    for (int i : alg.basis_between(a, b))
      if (alg.basis()[i].length() >= 1) r.push_back(i);
    return r;
  };

  // arrows: a complement of rad^2 in rad, block by block
  for (int ia = 0; ia < m; ++ia)
    for (int ib = 0; ib < m; ++ib) {
      std::vector<int> cols = rad_block(ev[ia], ev[ib]);
      if (cols.empty()) continue;
      // longest paths first so the free columns are the short ones
      std::stable_sort(cols.begin(), cols.end(), [&](int x, int y) { return alg.basis()[x].length() > alg.basis()[y].length(); });
      std::vector<Vec> sq;
      for (int ic = 0; ic < m; ++ic)
        for (int x : rad_block(ev[ia], ev[ic]))
          for (int y : rad_block(ev[ic], ev[ib])) {
            const Vec& pr = alg.product(x, y);
            Vec row(cols.size());
            for (std::size_t k = 0; k < cols.size(); ++k) row[k] = pr[cols[k]];
            sq.push_back(std::move(row));
          }
      Mat rows(static_cast<int>(sq.size()), static_cast<int>(cols.size()), f);
      for (int r = 0; r < rows.rows(); ++r)
        for (int c = 0; c < rows.cols(); ++c) rows(r, c) = sq[r][c];
      Rref rr = rref(rows);
      std::vector<char> piv(cols.size(), 0);
      for (int c : rr.pivots) piv[c] = 1;
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (piv[c]) continue;
        cq.arrows.push_back(Arrow{alg.label(cols[c]), ia, ib});
        out.arrow_images.push_back(alg.unit_vector(cols[c]));
      }
    }

  // relations: kernel of K(corner quiver) -> e Lambda e, block by block
  std::vector<Path> cpaths = all_paths(cq);
  auto image_of = [&](const Path& p) {
    Vec v = alg.idempotent(ev[p.source]);
    for (int a : p.arrows) v = alg.multiply(v, out.arrow_images[a]);
    return v;
  };
  std::vector<Relation> rels;
  for (int ia = 0; ia < m; ++ia)
    for (int ib = 0; ib < m; ++ib) {
      std::vector<Path> bp;
      for (const auto& p : cpaths)
        if (p.source == ia && p.target == ib) bp.push_back(p);
      if (bp.empty()) continue;
      std::vector<Vec> imgs;
      for (const auto& p : bp) imgs.push_back(image_of(p));
      Mat im = columns_to_mat(imgs, d, f);
      for (const auto& kv : kernel_basis(im)) {
        Relation rel;
        for (std::size_t c = 0; c < bp.size(); ++c)
          if (kv[c]) {
            if (bp[c].length() < 2) fail(ErrorKind::Internal, "corner relation of length < 2");
            rel.push_back(Term{kv[c], bp[c]});
          }
        rels.push_back(std::move(rel));
      }
    }

  out.algebra = path_algebra(std::move(cq), std::move(rels), f);
  const auto& calg = *out.algebra;
  for (const auto& p : calg.basis()) out.embedding.push_back(image_of(p));

  // embedding must be injective onto e Lambda e and multiplicative
  int corner_dim = 0;
  for (int a : ev)
    for (int b : ev) corner_dim += static_cast<int>(alg.basis_between(a, b).size());
  if (calg.dim() != corner_dim ||
      (corner_dim > 0 && rank(columns_to_mat(out.embedding, d, f)) != corner_dim))
    fail(ErrorKind::Internal, "corner re-presentation does not match e Lambda e");
  for (int i = 0; i < calg.dim(); ++i)
    for (int j = 0; j < calg.dim(); ++j) {
      Vec lhs(d, 0);
      const Vec& pr = calg.product(i, j);
      for (int k = 0; k < calg.dim(); ++k)
        for (int t = 0; t < d; ++t) lhs[t] = f.add(lhs[t], f.mul(pr[k], out.embedding[k][t]));
      if (lhs != alg.multiply(out.embedding[i], out.embedding[j]))
        fail(ErrorKind::Internal, "corner embedding is not multiplicative");
    }
  return out;
}

}  // namespace widerec
