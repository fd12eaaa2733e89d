#pragma once

// Dense linear algebra over a finite field.

#include <optional>
#include <vector>

#include "toral/ff.hpp"

namespace toral::la {

using ff::Elem;
using ff::Field;
using ff::Poly;
using ff::Vec;

class Mat {
 public:
  Mat() = default;
  Mat(Field f, std::size_t rows, std::size_t cols)
      : f_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols) {}
  static Mat identity(const Field& f, std::size_t n);
  /// Rows given explicitly; every row must have `cols` entries.
  static Mat from_rows(const Field& f, const std::vector<Vec>& rows, std::size_t cols);

  const Field& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::span<Elem> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }
  std::span<const Elem> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
  Vec row_vec(std::size_t i) const { return Vec(row(i).begin(), row(i).end()); }
  Vec col(std::size_t j) const;
  void set_col(std::size_t j, std::span<const Elem> v);

  Mat transpose() const;
  bool is_zero() const;
  /// A v for a column vector v.
  Vec apply(std::span<const Elem> v) const;
  /// Keeps rows [0, n).
  void truncate_rows(std::size_t n);
  void append_row(std::span<const Elem> v);

  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  Field f_;
  std::size_t rows_ = 0, cols_ = 0;
  Vec a_;
};

struct Echelon {
  Mat m;                            // reduced row echelon form, zero rows removed
  std::vector<std::size_t> pivots;  // pivot column of each row, increasing
};

Echelon rref(Mat a);
std::size_t rank(const Mat& a);

/// A subspace of F^n kept as the rows of its reduced row echelon basis.
class Subspace {
 public:
  Subspace() = default;
  Subspace(Field f, std::size_t ambient) : basis_(std::move(f), 0, ambient) {}
  static Subspace full(const Field& f, std::size_t n);
  static Subspace span(const Field& f, std::size_t ambient, const std::vector<Vec>& vecs);
  /// Row space of m.
  static Subspace row_space(const Mat& m);

  const Field& field() const { return basis_.field(); }
  std::size_t ambient() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  const Mat& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vec vec(std::size_t i) const { return basis_.row_vec(i); }
  std::vector<Vec> vecs() const;

  /// v minus its echelon reduction against the basis; zero iff v is inside.
  Vec reduce(Vec v) const;
  bool contains(std::span<const Elem> v) const;
  bool contains(const Subspace& w) const;
  /// Coordinates of v (assumed inside) in the echelon basis.
  Vec coordinates(std::span<const Elem> v) const;
  Vec combine(std::span<const Elem> coords) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.basis_ == b.basis_;
  }

 private:
  Mat basis_;
  std::vector<std::size_t> pivots_;
};

Subspace sum(const Subspace& u, const Subspace& w);
Subspace intersection(const Subspace& u, const Subspace& w);

/// Right null space {x : A x = 0}.
Subspace kernel(const Mat& a);
/// Image of A (column space).
Subspace image(const Mat& a);

/// Least-pivot solution of A x = b (free variables zero), if any.
std::optional<Vec> solve(const Mat& a, std::span<const Elem> b);

/// Reusable solver for A x = b with many right-hand sides.
class LinearSolver {
 public:
  explicit LinearSolver(const Mat& a);
  std::optional<Vec> solve(std::span<const Elem> b) const;
  std::size_t rank() const { return pivots_.size(); }

 private:
  Mat transform_;  // E with E A = R (reduced echelon)
  std::vector<std::size_t> pivots_;
  std::size_t cols_ = 0;
};

/// Throws std::domain_error if singular.
Mat inverse(const Mat& a);

Mat poly_eval(const Poly& p, const Mat& a);
/// p(A) v by Horner's rule.
Vec poly_apply(const Poly& p, const Mat& a, std::span<const Elem> v);
Mat mat_pow(Mat a, std::uint64_t e);

/// Throw std::invalid_argument for non-square input.
Poly min_poly(const Mat& a);
Poly char_poly(const Mat& a);
Subspace eigenspace(const Mat& a, Elem v);

/// M / K for subspaces K of M. The section is spanned by the echelon rows of
/// M whose pivots are not pivots of K.
class QuotientMap {
 public:
  QuotientMap(Subspace m, Subspace k);
  const Subspace& space() const { return m_; }
  const Subspace& kernel() const { return k_; }
  std::size_t dim() const { return section_.rows(); }
  /// Rows are ambient representatives of the quotient basis.
  const Mat& section() const { return section_; }
  Vec project(std::span<const Elem> v) const;
  Vec lift(std::span<const Elem> coords) const;

 private:
  Subspace m_, k_;
  Mat section_;
  std::vector<std::size_t> cols_;  // pivots of M that are not pivots of K
};

/// Throws std::invalid_argument unless K is inside M.
QuotientMap quotient(const Subspace& m, const Subspace& k);

}  // namespace toral::la
