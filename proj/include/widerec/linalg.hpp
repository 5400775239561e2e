#pragma once

// Exact dense linear algebra over a prime field GF(p).
//
// Vectors are plain std::vector<int> with entries in [0, p). Matrices act on
// column vectors; a matrix of shape rows x cols represents a linear map
// GF(p)^cols -> GF(p)^rows. Zero-sized matrices are valid and common (modules
// with a zero component at a vertex).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "widerec/errors.hpp"

namespace widerec {

using Vec = std::vector<int>;

class Field {
 public:
  explicit Field(int p = 2) : p_(p) {
    if (p < 2 || p > 97) fail(ErrorKind::InvalidInput, "field characteristic must be in [2, 97], got " + std::to_string(p));
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) fail(ErrorKind::InvalidInput, "field characteristic must be prime, got " + std::to_string(p));
  }

  int p() const noexcept { return p_; }

  int reduce(long long x) const noexcept {
    long long r = x % p_;
    return static_cast<int>(r < 0 ? r + p_ : r);
  }
  int add(int a, int b) const noexcept { int s = a + b; return s >= p_ ? s - p_ : s; }
  int sub(int a, int b) const noexcept { int s = a - b; return s < 0 ? s + p_ : s; }
  int neg(int a) const noexcept { return a == 0 ? 0 : p_ - a; }
  int mul(int a, int b) const noexcept { return (a * b) % p_; }
  int inv(int a) const {
    if (a % p_ == 0) fail(ErrorKind::NonInvertible, "zero has no inverse");
    // a^(p-2) by square-and-multiply
    int result = 1, base = a % p_, e = p_ - 2;
    while (e > 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  int p_;
};

class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, Field f) : rows_(rows), cols_(cols), f_(f), a_(static_cast<std::size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) fail(ErrorKind::InvalidInput, "negative matrix shape");
  }
  Mat(int rows, int cols, Field f, std::vector<int> entries) : rows_(rows), cols_(cols), f_(f), a_(std::move(entries)) {
    if (a_.size() != static_cast<std::size_t>(rows) * cols)
      fail(ErrorKind::InvalidInput, "matrix entry count does not match shape");
    for (auto& x : a_) x = f_.reduce(x);
  }

  static Mat identity(int n, Field f) {
    Mat m(n, n, f);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Mat zero(int rows, int cols, Field f) { return Mat(rows, cols, f); }
  static Mat column(const Vec& v, Field f) { return Mat(static_cast<int>(v.size()), 1, f, v); }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  const Field& field() const noexcept { return f_; }
  int p() const noexcept { return f_.p(); }
  bool square() const noexcept { return rows_ == cols_; }

  int& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  int operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  const std::vector<int>& entries() const noexcept { return a_; }

  bool is_zero() const noexcept {
    for (int x : a_)
      if (x != 0) return false;
    return true;
  }

  Vec col(int c) const {
    Vec v(rows_);
    for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  Vec row(int r) const { return Vec(a_.begin() + static_cast<std::ptrdiff_t>(r) * cols_, a_.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols_); }

  Mat transpose() const {
    Mat t(cols_, rows_, f_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Mat& operator+=(const Mat& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] = f_.add(a_[i], o.a_[i]);
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] = f_.sub(a_[i], o.a_[i]);
    return *this;
  }
  Mat& scale(int s) {
    s = f_.reduce(s);
    for (auto& x : a_) x = f_.mul(x, s);
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(int s, Mat a) { return a.scale(s); }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) fail(ErrorKind::Internal, "matrix product shape mismatch");
    if (a.f_ != b.f_) fail(ErrorKind::Internal, "matrix product over different fields");
    Mat c(a.rows_, b.cols_, a.f_);
    const int p = a.f_.p();
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        int x = a(i, k);
        if (x == 0) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) = (c(i, j) + x * b(k, j)) % p;
      }
    return c;
  }

  friend Vec operator*(const Mat& a, const Vec& v) {
    if (static_cast<int>(v.size()) != a.cols_) fail(ErrorKind::Internal, "matrix-vector shape mismatch");
    Vec out(a.rows_, 0);
    const int p = a.f_.p();
    for (int i = 0; i < a.rows_; ++i) {
      long long s = 0;
      for (int k = 0; k < a.cols_; ++k) s += static_cast<long long>(a(i, k)) * v[k];
      out[i] = static_cast<int>(s % p);
    }
    return out;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.f_ == b.f_ && a.a_ == b.a_;
  }

 private:
  void check_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::Internal, "matrix shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  Field f_{2};
  std::vector<int> a_;
};

// --- stacking --------------------------------------------------------------

inline Mat hstack(std::span<const Mat> blocks, int rows, Field f) {
  int cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) fail(ErrorKind::Internal, "hstack row mismatch");
    cols += b.cols();
  }
  Mat out(rows, cols, f);
  int off = 0;
  for (const auto& b : blocks) {
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < b.cols(); ++c) out(r, off + c) = b(r, c);
    off += b.cols();
  }
  return out;
}

inline Mat vstack(std::span<const Mat> blocks, int cols, Field f) {
  int rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) fail(ErrorKind::Internal, "vstack column mismatch");
    rows += b.rows();
  }
  Mat out(rows, cols, f);
  int off = 0;
  for (const auto& b : blocks) {
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < cols; ++c) out(off + r, c) = b(r, c);
    off += b.rows();
  }
  return out;
}

inline Mat block_diag(std::span<const Mat> blocks, Field f) {
  int rows = 0, cols = 0;
  for (const auto& b : blocks) rows += b.rows(), cols += b.cols();
  Mat out(rows, cols, f);
  int ro = 0, co = 0;
  for (const auto& b : blocks) {
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < b.cols(); ++c) out(ro + r, co + c) = b(r, c);
    ro += b.rows();
    co += b.cols();
  }
  return out;
}

inline Mat columns_to_mat(const std::vector<Vec>& cols, int rows, Field f) {
  Mat m(rows, static_cast<int>(cols.size()), f);
  for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
    if (static_cast<int>(cols[c].size()) != rows) fail(ErrorKind::Internal, "column length mismatch");
    for (int r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

// --- elimination -----------------------------------------------------------

struct Rref {
  Mat reduced;
  std::vector<int> pivots;  // pivot column of row i, for i < rank
  int rank() const noexcept { return static_cast<int>(pivots.size()); }
};

inline Rref rref(const Mat& m) {
  const Field& f = m.field();
  Mat a = m;
  std::vector<int> pivots;
  int row = 0;
  for (int c = 0; c < a.cols() && row < a.rows(); ++c) {
    int sel = -1;
    for (int r = row; r < a.rows(); ++r)
      if (a(r, c) != 0) { sel = r; break; }
    if (sel < 0) continue;
    if (sel != row)
      for (int k = 0; k < a.cols(); ++k) std::swap(a(sel, k), a(row, k));
    int s = f.inv(a(row, c));
    for (int k = c; k < a.cols(); ++k) a(row, k) = f.mul(a(row, k), s);
    for (int r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, c) == 0) continue;
      int factor = a(r, c);
      for (int k = c; k < a.cols(); ++k) a(r, k) = f.sub(a(r, k), f.mul(factor, a(row, k)));
    }
    pivots.push_back(c);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

inline int rank(const Mat& m) { return rref(m).rank(); }

/// Basis of the right null space {x : m x = 0}, one vector per free column.
inline std::vector<Vec> kernel_basis(const Mat& m) {
  const Field& f = m.field();
  Rref r = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (int c : r.pivots) is_pivot[c] = 1;
  std::vector<Vec> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols(), 0);
    v[free] = 1;
    for (int i = 0; i < r.rank(); ++i) v[r.pivots[i]] = f.neg(r.reduced(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Kernel basis packed as the columns of a cols x nullity matrix.
inline Mat kernel_matrix(const Mat& m) { return columns_to_mat(kernel_basis(m), m.cols(), m.field()); }

/// Canonical basis (reduced echelon) of the column space, as columns.
inline Mat column_space(const Mat& m) {
  Rref r = rref(m.transpose());
  Mat out(m.rows(), r.rank(), m.field());
  for (int i = 0; i < r.rank(); ++i)
    for (int k = 0; k < m.rows(); ++k) out(k, i) = r.reduced(i, k);
  return out;
}

inline std::optional<Vec> solve(const Mat& m, const Vec& b) {
  if (static_cast<int>(b.size()) != m.rows()) fail(ErrorKind::InvalidInput, "solve: right-hand side length mismatch");
  const Field& f = m.field();
  Mat aug(m.rows(), m.cols() + 1, f);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = f.reduce(b[r]);
  }
  Rref rr = rref(aug);
  if (!rr.pivots.empty() && rr.pivots.back() == m.cols()) return std::nullopt;
  Vec x(m.cols(), 0);
  for (int i = 0; i < rr.rank(); ++i) x[rr.pivots[i]] = rr.reduced(i, m.cols());
  return x;
}

/// Solves m X = b column by column; nullopt if any column is inconsistent.
inline std::optional<Mat> solve_matrix(const Mat& m, const Mat& b) {
  if (b.rows() != m.rows()) fail(ErrorKind::InvalidInput, "solve_matrix: row mismatch");
  const Field& f = m.field();
  Mat aug(m.rows(), m.cols() + b.cols(), f);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    for (int c = 0; c < b.cols(); ++c) aug(r, m.cols() + c) = b(r, c);
  }
  Rref rr = rref(aug);
  if (!rr.pivots.empty() && rr.pivots.back() >= m.cols()) return std::nullopt;
  Mat x(m.cols(), b.cols(), f);
  for (int i = 0; i < rr.rank(); ++i)
    for (int c = 0; c < b.cols(); ++c) x(rr.pivots[i], c) = rr.reduced(i, m.cols() + c);
  return x;
}

inline bool is_invertible(const Mat& m) { return m.square() && rank(m) == m.rows(); }

inline Mat inverse(const Mat& m) {
  if (!m.square()) fail(ErrorKind::NonInvertible, "inverse of a non-square matrix");
  auto x = solve_matrix(m, Mat::identity(m.rows(), m.field()));
  if (!x || !is_invertible(m)) fail(ErrorKind::NonInvertible, "matrix has rank below its size");
  return *x;
}

/// Projection onto a quotient space F^n / span(cols of sub), with a section.
/// proj * sub == 0, proj * lift == I.
struct Quotient {
  Mat proj;  // q x n
  Mat lift;  // n x q
  int dim() const noexcept { return proj.rows(); }
};

inline Quotient quotient_by(const Mat& sub) {
  const Field& f = sub.field();
  const int n = sub.rows();
  Rref r = rref(sub.transpose());
  std::vector<int> pivot_row(n, -1);
  for (int i = 0; i < r.rank(); ++i) pivot_row[r.pivots[i]] = i;
  std::vector<int> free;
  for (int c = 0; c < n; ++c)
    if (pivot_row[c] < 0) free.push_back(c);
  const int q = static_cast<int>(free.size());
  Mat proj(q, n, f), lift(n, q, f);
  for (int j = 0; j < q; ++j) {
    lift(free[j], j) = 1;
    proj(j, free[j]) = 1;
    for (int i = 0; i < r.rank(); ++i) proj(j, r.pivots[i]) = f.neg(r.reduced(i, free[j]));
  }
  return {std::move(proj), std::move(lift)};
}

/// Coordinates of the columns of v in the basis given by the (independent)
/// columns of basis. Fails if some column lies outside the span.
inline Mat coordinates_in(const Mat& basis, const Mat& v) {
  auto x = solve_matrix(basis, v);
  if (!x) fail(ErrorKind::Internal, "vector outside the expected subspace");
  return *x;
}

}  // namespace widerec
