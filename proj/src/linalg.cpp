#include "toral/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace toral::la {

namespace {

void require_square(const Mat& a) {
  if (!a.square()) throw std::invalid_argument("matrix is not square");
}

// Gauss-Jordan on the first `pivot_cols` columns; rows are kept (zero rows
// sink to the bottom). Returns pivot columns.
std::vector<std::size_t> eliminate(Mat& a, std::size_t pivot_cols) {
  const Field& f = a.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < a.rows(); ++c) {
    std::size_t sel = r;
    while (sel < a.rows() && a(sel, c).code == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != r)
      std::swap_ranges(a.row(sel).begin(), a.row(sel).end(), a.row(r).begin());
    const Elem inv = f.inv(a(r, c));
    if (inv != f.one()) f.scale(a.row(r).subspan(c), inv);
    const auto prow = a.row(r).subspan(c);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      const Elem x = a(i, c);
      if (x.code) f.axpy(a.row(i).subspan(c), f.neg(x), prow);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Incremental echelon basis used for Krylov sequences: every stored vector
// carries the polynomial (in A, applied to the current start vector) that
// produced it, unless it belongs to an earlier block.
class KrylovStore {
 public:
  KrylovStore(const Field& f, std::size_t n) : f_(f), n_(n) {}

  // Reduces u in place; combo tracked only through entries of `block`.
  void reduce(Vec& u, Vec& combo, int block) const {
    for (const auto& e : entries_) {
      const Elem c = u[e.pivot];
      if (c.code == 0) continue;
      const Elem factor = f_.neg(f_.mul(c, e.pivot_inv));
      f_.axpy(u, factor, e.v);
      if (e.block == block) {
        if (combo.size() < e.combo.size()) combo.resize(e.combo.size(), f_.zero());
        f_.axpy(combo, factor, e.combo);
      }
    }
  }

  void insert_reduced(Vec u, Vec combo, int block) {
    std::size_t p = 0;
    while (p < n_ && u[p].code == 0) ++p;
    const Elem inv = f_.inv(u[p]);
    entries_.push_back({std::move(u), std::move(combo), p, inv, block});
  }

  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    Vec v;
    Vec combo;
    std::size_t pivot;
    Elem pivot_inv;
    int block;
  };
  Field f_;
  std::size_t n_;
  std::vector<Entry> entries_;
};

bool all_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e.code == 0; });
}

// Monic g of least degree with g(A) w in span(store entries of earlier
// blocks); stores the new Krylov vectors under `block`.
Poly relative_order(const Mat& a, const Vec& w, KrylovStore& store, int block) {
  const Field& f = a.field();
  Vec u = w;
  Vec combo{f.one()};
  for (;;) {
    store.reduce(u, combo, block);
    if (all_zero(u)) return Poly(f, combo);
    Vec next = a.apply(u);
    Vec next_combo(combo.size() + 1, f.zero());
    std::copy(combo.begin(), combo.end(), next_combo.begin() + 1);
    store.insert_reduced(std::move(u), std::move(combo), block);
    u = std::move(next);
    combo = std::move(next_combo);
  }
}

}  // namespace

// ---------------------------------------------------------------- Mat

Mat Mat::identity(const Field& f, std::size_t n) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Mat Mat::from_rows(const Field& f, const std::vector<Vec>& rows, std::size_t cols) {
  Mat m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

Vec Mat::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Mat::set_col(std::size_t j, std::span<const Elem> v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Mat Mat::transpose() const {
  Mat t(f_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](Elem e) { return e.code == 0; });
}

Vec Mat::apply(std::span<const Elem> v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
  Vec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Elem acc{0};
    const auto r = row(i);
    for (std::size_t j = 0; j < cols_; ++j)
      if (r[j].code && v[j].code) acc = f_.add(acc, f_.mul(r[j], v[j]));
    out[i] = acc;
  }
  return out;
}

void Mat::truncate_rows(std::size_t n) {
  rows_ = std::min(rows_, n);
  a_.resize(rows_ * cols_);
}

void Mat::append_row(std::span<const Elem> v) {
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  a_.insert(a_.end(), v.begin(), v.end());
  ++rows_;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
  const Field& f = a.f_;
  Mat c(f, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Elem x = a(i, k);
      if (x.code) f.axpy(c.row(i), x, b.row(k));
    }
  return c;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("shape mismatch");
  Mat c = a;
  a.f_.axpy(c.a_, a.f_.one(), b.a_);
  return c;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("shape mismatch");
  Mat c = a;
  a.f_.axpy(c.a_, a.f_.neg(a.f_.one()), b.a_);
  return c;
}

// ---------------------------------------------------------------- echelon

Echelon rref(Mat a) {
  auto piv = eliminate(a, a.cols());
  a.truncate_rows(piv.size());
  return {std::move(a), std::move(piv)};
}

std::size_t rank(const Mat& a) { return rref(a).pivots.size(); }

// ---------------------------------------------------------------- Subspace

Subspace Subspace::full(const Field& f, std::size_t n) {
  Subspace s;
  s.basis_ = Mat::identity(f, n);
  s.pivots_.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.pivots_[i] = i;
  return s;
}

Subspace Subspace::span(const Field& f, std::size_t ambient, const std::vector<Vec>& vecs) {
  return row_space(Mat::from_rows(f, vecs, ambient));
}

Subspace Subspace::row_space(const Mat& m) {
  auto e = rref(m);
  Subspace s;
  s.basis_ = std::move(e.m);
  s.pivots_ = std::move(e.pivots);
  return s;
}

std::vector<Vec> Subspace::vecs() const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(vec(i));
  return out;
}

Vec Subspace::reduce(Vec v) const {
  if (v.size() != ambient()) throw std::invalid_argument("ambient dimension mismatch");
  const Field& f = field();
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Elem c = v[pivots_[i]];
    if (c.code) f.axpy(v, f.neg(c), basis_.row(i));
  }
  return v;
}

bool Subspace::contains(std::span<const Elem> v) const {
  return all_zero(reduce(Vec(v.begin(), v.end())));
}

bool Subspace::contains(const Subspace& w) const {
  if (w.ambient() != ambient()) throw std::invalid_argument("ambient dimension mismatch");
  for (std::size_t i = 0; i < w.dim(); ++i)
    if (!contains(w.basis_.row(i))) return false;
  return true;
}

Vec Subspace::coordinates(std::span<const Elem> v) const {
  Vec c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Vec Subspace::combine(std::span<const Elem> coords) const {
  if (coords.size() != dim()) throw std::invalid_argument("coordinate length mismatch");
  Vec v(ambient());
  for (std::size_t i = 0; i < dim(); ++i)
    if (coords[i].code) field().axpy(v, coords[i], basis_.row(i));
  return v;
}

Subspace sum(const Subspace& u, const Subspace& w) {
  if (u.ambient() != w.ambient()) throw std::invalid_argument("ambient dimension mismatch");
  if (w.is_zero()) return u;
  if (u.is_zero()) return w;
  Mat m = u.basis();
  for (std::size_t i = 0; i < w.dim(); ++i) m.append_row(w.basis().row(i));
  return Subspace::row_space(m);
}

Subspace intersection(const Subspace& u, const Subspace& w) {
  if (u.ambient() != w.ambient()) throw std::invalid_argument("ambient dimension mismatch");
  const Field& f = u.field();
  if (u.is_zero() || w.is_zero()) return Subspace(f, u.ambient());
  // (a, b) with sum a_i u_i = sum b_j w_j
  Mat s(f, u.ambient(), u.dim() + w.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) s.set_col(i, u.basis().row(i));
  for (std::size_t j = 0; j < w.dim(); ++j) {
    Vec neg = w.vec(j);
    f.scale(neg, f.neg(f.one()));
    s.set_col(u.dim() + j, neg);
  }
  const Subspace ker = kernel(s);
  std::vector<Vec> out;
  for (std::size_t t = 0; t < ker.dim(); ++t) {
    const Vec c = ker.vec(t);
    out.push_back(u.combine(std::span<const Elem>(c).first(u.dim())));
  }
  return Subspace::span(f, u.ambient(), out);
}

Subspace kernel(const Mat& a) {
  const Field& f = a.field();
  const std::size_t n = a.cols();
  const auto e = rref(a);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> vecs;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    Vec v(n);
    v[j] = f.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = f.neg(e.m(r, j));
    vecs.push_back(std::move(v));
  }
  return Subspace::span(f, n, vecs);
}

Subspace image(const Mat& a) { return Subspace::row_space(a.transpose()); }

std::optional<Vec> solve(const Mat& a, std::span<const Elem> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
  Mat aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), aug.row(i).begin());
    aug(i, a.cols()) = b[i];
  }
  const auto piv = eliminate(aug, a.cols());
  for (std::size_t r = piv.size(); r < aug.rows(); ++r)
    if (aug(r, a.cols()).code) return std::nullopt;
  Vec x(a.cols());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, a.cols());
  return x;
}

LinearSolver::LinearSolver(const Mat& a) : cols_(a.cols()) {
  const Field& f = a.field();
  Mat aug(f, a.rows(), a.cols() + a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), aug.row(i).begin());
    aug(i, a.cols() + i) = f.one();
  }
  pivots_ = eliminate(aug, a.cols());
  transform_ = Mat(f, a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    std::copy(aug.row(i).begin() + a.cols(), aug.row(i).end(), transform_.row(i).begin());
}

std::optional<Vec> LinearSolver::solve(std::span<const Elem> b) const {
  if (b.size() != transform_.cols()) throw std::invalid_argument("right-hand side length mismatch");
  const Vec c = transform_.apply(b);
  for (std::size_t r = pivots_.size(); r < c.size(); ++r)
    if (c[r].code) return std::nullopt;
  Vec x(cols_);
  for (std::size_t r = 0; r < pivots_.size(); ++r) x[pivots_[r]] = c[r];
  return x;
}

Mat inverse(const Mat& a) {
  require_square(a);
  LinearSolver s(a);
  if (s.rank() != a.rows()) throw std::domain_error("matrix is singular");
  const Field& f = a.field();
  Mat inv(f, a.rows(), a.rows());
  for (std::size_t j = 0; j < a.rows(); ++j) {
    Vec e(a.rows());
    e[j] = f.one();
    inv.set_col(j, *s.solve(e));
  }
  return inv;
}

// ---------------------------------------------------------------- polynomials of matrices

Mat poly_eval(const Poly& p, const Mat& a) {
  require_square(a);
  const Field& f = a.field();
  Mat acc(f, a.rows(), a.cols());
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * a;
    for (std::size_t d = 0; d < a.rows(); ++d) acc(d, d) = f.add(acc(d, d), c[i]);
  }
  return acc;
}

Vec poly_apply(const Poly& p, const Mat& a, std::span<const Elem> v) {
  const Field& f = a.field();
  Vec acc(a.rows());
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = a.apply(acc);
    if (c[i].code) f.axpy(acc, c[i], v);
  }
  return acc;
}

Mat mat_pow(Mat a, std::uint64_t e) {
  require_square(a);
  Mat acc = Mat::identity(a.field(), a.rows());
  while (e) {
    if (e & 1) acc = acc * a;
    e >>= 1;
    if (e) a = a * a;
  }
  return acc;
}

Poly min_poly(const Mat& a) {
  require_square(a);
  const Field& f = a.field();
  const std::size_t n = a.rows();
  Poly m = Poly::constant(f, f.one());
  // m only has to kill generators of F^n as a module over F[A]
  KrylovStore span(f, n);
  int block = 0;
  for (std::size_t i = 0; i < n && m.degree() < static_cast<int>(n) && span.size() < n; ++i) {
    Vec e(n);
    e[i] = f.one();
    Vec combo;
    Vec probe = e;
    span.reduce(probe, combo, -1);
    if (all_zero(probe)) continue;
    relative_order(a, e, span, block++);
    const Vec w = poly_apply(m, a, e);
    if (all_zero(w)) continue;
    KrylovStore store(f, n);
    m = m * relative_order(a, w, store, 0);
  }
  return m;
}

Poly char_poly(const Mat& a) {
  require_square(a);
  const Field& f = a.field();
  const std::size_t n = a.rows();
  Poly c = Poly::constant(f, f.one());
  KrylovStore store(f, n);
  int block = 0;
  for (std::size_t i = 0; i < n && store.size() < n; ++i) {
    Vec e(n);
    e[i] = f.one();
    Vec combo;
    Vec probe = e;
    store.reduce(probe, combo, -1);
    if (all_zero(probe)) continue;
    c = c * relative_order(a, e, store, block++);
  }
  return c;
}

Subspace eigenspace(const Mat& a, Elem v) {
  require_square(a);
  Mat b = a;
  const Field& f = a.field();
  for (std::size_t i = 0; i < a.rows(); ++i) b(i, i) = f.sub(b(i, i), v);
  return kernel(b);
}

// ---------------------------------------------------------------- quotient

QuotientMap::QuotientMap(Subspace m, Subspace k) : m_(std::move(m)), k_(std::move(k)) {
  if (!m_.contains(k_)) throw std::invalid_argument("kernel is not contained in the space");
  std::vector<bool> kp(m_.ambient(), false);
  for (auto p : k_.pivots()) kp[p] = true;
  section_ = Mat(m_.field(), 0, m_.ambient());
  for (std::size_t i = 0; i < m_.dim(); ++i) {
    const std::size_t p = m_.pivots()[i];
    if (kp[p]) continue;
    cols_.push_back(p);
    section_.append_row(m_.basis().row(i));
  }
}

Vec QuotientMap::project(std::span<const Elem> v) const {
  Vec r = k_.reduce(Vec(v.begin(), v.end()));
  Vec c(cols_.size());
  for (std::size_t i = 0; i < cols_.size(); ++i) c[i] = r[cols_[i]];
  return c;
}

Vec QuotientMap::lift(std::span<const Elem> coords) const {
  if (coords.size() != dim()) throw std::invalid_argument("coordinate length mismatch");
  Vec v(m_.ambient());
  for (std::size_t i = 0; i < dim(); ++i)
    if (coords[i].code) m_.field().axpy(v, coords[i], section_.row(i));
  return v;
}

QuotientMap quotient(const Subspace& m, const Subspace& k) { return QuotientMap(m, k); }

}  // namespace toral::la
