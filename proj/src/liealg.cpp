#include "toral/liealg.hpp"

#include <algorithm>
#include <stdexcept>

namespace toral::lie {

namespace {

Vec vec_mat(std::span<const Elem> v, const Mat& m) {
  const Field& f = m.field();
  Vec out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (v[i].code) f.axpy(out, v[i], m.row(i));
  return out;
}

bool is_zero(std::span<const Elem> v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e.code == 0; });
}

// Intersection of ker(maps(i)) over i < n, refined one map at a time.
template <class MapFn>
Subspace common_kernel(const Field& f, std::size_t dim, std::size_t n, MapFn maps) {
  Mat basis = Mat::identity(f, dim);
  for (std::size_t i = 0; i < n && basis.rows() > 0; ++i) {
    const Mat a = maps(i);
    // columns: images of the current basis vectors
    Mat img(f, a.rows(), basis.rows());
    for (std::size_t j = 0; j < basis.rows(); ++j) img.set_col(j, a.apply(basis.row(j)));
    const Subspace k = la::kernel(img);
    Mat next(f, k.dim(), dim);
    for (std::size_t r = 0; r < k.dim(); ++r) {
      const Vec v = vec_mat(k.basis().row(r), basis);
      std::copy(v.begin(), v.end(), next.row(r).begin());
    }
    basis = std::move(next);
  }
  return Subspace::row_space(basis);
}

// ker(A^e) where x^e exactly divides the minimal polynomial of A.
Subspace fitting_null(const Mat& a) {
  const Poly m = la::min_poly(a);
  std::size_t e = 0;
  while (m.coeff(e).code == 0) ++e;
  return e == 0 ? Subspace(a.field(), a.cols()) : la::kernel(la::mat_pow(a, e));
}

}  // namespace

Vec random_vector(const Subspace& v, Rng& rng) {
  const Field& f = v.field();
  Vec c(v.dim());
  for (auto& e : c) e = f.random(rng);
  return v.combine(c);
}

Vec random_nonzero(const Subspace& v, Rng& rng) {
  if (v.is_zero()) throw std::invalid_argument("random_nonzero: zero subspace");
  for (;;) {
    Vec x = random_vector(v, rng);
    if (!is_zero(x)) return x;
  }
}

Subspace product_space(const StructAlgebra& L, const Subspace& u, const Subspace& w) {
  const bool same = u == w;
  std::vector<Vec> out;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    const Mat a = L.ad(u.basis().row(i));
    for (std::size_t j = same ? i + 1 : 0; j < w.dim(); ++j) {
      Vec v = a.apply(w.basis().row(j));
      if (!is_zero(v)) out.push_back(std::move(v));
    }
  }
  return Subspace::span(L.field(), L.dim(), out);
}

Subspace derived(const StructAlgebra& L, const Subspace& u) { return product_space(L, u, u); }

bool is_subalgebra(const StructAlgebra& L, const Subspace& u) { return u.contains(derived(L, u)); }

bool is_ideal(const StructAlgebra& L, const Subspace& u) {
  for (std::size_t k = 0; k < L.dim(); ++k) {
    const Mat a = L.ad_basis(k);
    for (std::size_t j = 0; j < u.dim(); ++j)
      if (!u.contains(a.apply(u.basis().row(j)))) return false;
  }
  return true;
}

Subspace subalgebra_closure(const StructAlgebra& L, const Subspace& v) {
  Subspace s = v;
  for (;;) {
    Subspace next = la::sum(s, derived(L, s));
    if (next.dim() == s.dim()) return s;
    s = std::move(next);
  }
}

Subspace ideal_closure(const StructAlgebra& L, const Subspace& v) {
  std::vector<Mat> ads;
  for (std::size_t k = 0; k < L.dim(); ++k) ads.push_back(L.ad_basis(k));
  Subspace ideal = v;
  std::vector<Vec> frontier = v.vecs();
  while (!frontier.empty()) {
    std::vector<Vec> fresh;
    for (const auto& a : ads)
      for (const auto& w : frontier) {
        Vec img = a.apply(w);
        if (ideal.contains(img)) continue;
        fresh.push_back(img);
        ideal = la::sum(ideal, Subspace::span(L.field(), L.dim(), {img}));
      }
    frontier = std::move(fresh);
  }
  return ideal;
}

Subspace center(const StructAlgebra& L) {
  return common_kernel(L.field(), L.dim(), L.dim(), [&](std::size_t k) { return L.ad_basis(k); });
}

Subspace centralizer(const StructAlgebra& L, std::span<const Elem> x) {
  return la::kernel(L.ad(x));
}

Subspace centralizer(const StructAlgebra& L, const Subspace& u) {
  return common_kernel(L.field(), L.dim(), u.dim(), [&](std::size_t i) { return L.ad(u.basis().row(i)); });
}

Subspace normalizer(const StructAlgebra& L, const Subspace& u) {
  const Subspace ann = la::kernel(u.basis().rows() ? u.basis() : Mat(L.field(), 1, L.dim()));
  if (ann.is_zero()) return Subspace::full(L.field(), L.dim());
  return common_kernel(L.field(), L.dim(), u.dim(),
                       [&](std::size_t i) { return ann.basis() * L.ad(u.basis().row(i)); });
}

bool is_nilpotent(const StructAlgebra& L, const Subspace& u) {
  if (u.dim() > 1) {
    Rng rng(u.dim());
    for (int t = 0; t < 3; ++t) {
      const Vec x = random_vector(u, rng);
      if (fitting_null(restricted_ad(L, x, u)).dim() != u.dim()) return false;
    }
  }
  Subspace c = u;
  for (;;) {
    if (c.is_zero()) return true;
    Subspace next = product_space(L, u, c);
    if (next.dim() == c.dim()) return false;
    c = std::move(next);
  }
}

Mat restricted_ad(const StructAlgebra& L, std::span<const Elem> x, const Subspace& u) {
  const Mat a = L.ad(x);
  Mat out(L.field(), u.dim(), u.dim());
  for (std::size_t j = 0; j < u.dim(); ++j) {
    const Vec v = a.apply(u.basis().row(j));
    if (!u.contains(v)) throw std::invalid_argument("restricted_ad: subspace not stable");
    out.set_col(j, u.coordinates(v));
  }
  return out;
}

StructAlgebra induced_algebra(const StructAlgebra& L, const Subspace& u) {
  const Field& f = L.field();
  StructAlgebra out(f, u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) {
    const Mat a = L.ad(u.basis().row(i));
    for (std::size_t j = i + 1; j < u.dim(); ++j) {
      const Vec v = a.apply(u.basis().row(j));
      if (!u.contains(v)) throw std::invalid_argument("induced_algebra: subspace is not a subalgebra");
      const Vec c = u.coordinates(v);
      std::vector<Term> t;
      for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k].code) t.push_back({static_cast<std::uint32_t>(k), c[k]});
      if (!t.empty()) out.set_product(i, j, std::move(t));
    }
  }
  return out;
}

Quotient quotient_algebra(const StructAlgebra& L, const Subspace& k) {
  if (!is_ideal(L, k)) throw std::invalid_argument("quotient_algebra: not an ideal");
  la::QuotientMap qm = la::quotient(Subspace::full(L.field(), L.dim()), k);
  StructAlgebra out(L.field(), qm.dim());
  for (std::size_t i = 0; i < qm.dim(); ++i) {
    const Mat a = L.ad(qm.section().row(i));
    for (std::size_t j = i + 1; j < qm.dim(); ++j) {
      const Vec c = qm.project(a.apply(qm.section().row(j)));
      std::vector<Term> t;
      for (std::size_t m = 0; m < c.size(); ++m)
        if (c[m].code) t.push_back({static_cast<std::uint32_t>(m), c[m]});
      if (!t.empty()) out.set_product(i, j, std::move(t));
    }
  }
  return {std::move(out), std::move(qm)};
}

Vec SubspaceHandle::pull(std::span<const Elem> m) const { return vec_mat(m, phi); }

Subspace SubspaceHandle::pull(const Subspace& u) const {
  std::vector<Vec> v;
  for (std::size_t i = 0; i < u.dim(); ++i) v.push_back(pull(u.basis().row(i)));
  return Subspace::span(phi.field(), phi.cols(), v);
}

SubspaceHandle identity_handle(const StructAlgebra& L) {
  return {L, Mat::identity(L.field(), L.dim())};
}

SubspaceHandle descend(const SubspaceHandle& h, const Subspace& c, const Subspace& k) {
  const StructAlgebra sub = induced_algebra(h.M, c);
  std::vector<Vec> kc;
  for (std::size_t i = 0; i < k.dim(); ++i) kc.push_back(c.coordinates(k.basis().row(i)));
  Quotient q = quotient_algebra(sub, Subspace::span(h.M.field(), c.dim(), kc));
  Mat phi = q.map.section() * c.basis() * h.phi;
  return {std::move(q.algebra), std::move(phi)};
}

StructAlgebra extend_scalars(const StructAlgebra& L, const ff::Embedding& e) {
  std::vector<Constant> cs = L.constants();
  for (auto& c : cs) std::get<3>(c) = e(std::get<3>(c));
  StructAlgebra out = StructAlgebra::from_constants(e.target(), L.dim(), cs);
  out.provenance = L.provenance;
  return out;
}

std::optional<Subspace> cartan_subalgebra(const StructAlgebra& L, Rng& rng, int attempts) {
  constexpr int kTriesPerStep = 12;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Subspace k = Subspace::full(L.field(), L.dim());
    bool stuck = false;
    while (!is_nilpotent(L, k)) {
      bool shrunk = false;
      for (int t = 0; t < kTriesPerStep && !shrunk; ++t) {
        const Vec x = random_vector(k, rng);
        const Mat a = restricted_ad(L, x, k);
        const Subspace null = fitting_null(a);
        if (null.dim() == k.dim()) continue;
        std::vector<Vec> vs;
        for (std::size_t i = 0; i < null.dim(); ++i) vs.push_back(k.combine(null.basis().row(i)));
        k = Subspace::span(L.field(), L.dim(), vs);
        shrunk = true;
      }
      if (!shrunk) {
        stuck = true;
        break;
      }
    }
    if (!stuck && normalizer(L, k) == k) return k;
  }
  return std::nullopt;
}

std::size_t reductive_rank(const StructAlgebra& L, Rng& rng) {
  if (auto k = cartan_subalgebra(L, rng)) return centralizer(L, *k).dim();
  const Field& f = L.field();
  unsigned m = 1;
  std::uint64_t size = f.q();
  while (size <= L.dim()) size *= f.q(), ++m;
  if (m == 1) m = 2;
  const Field big = Field::make(f.p(), f.k() * m);
  const StructAlgebra ext = extend_scalars(L, ff::Embedding(f, big));
  if (auto k = cartan_subalgebra(ext, rng)) return centralizer(ext, *k).dim();
  throw std::runtime_error("no Cartan subalgebra found");
}

bool is_semisimple_element(const StructAlgebra& L, std::span<const Elem> x) {
  return ff::is_squarefree(la::min_poly(L.ad(x)));
}

bool is_split_semisimple(const StructAlgebra& L, std::span<const Elem> x) {
  return ff::divides_xq_minus_x(la::min_poly(L.ad(x)));
}

SemisimpleExtractor::SemisimpleExtractor(const StructAlgebra& m) : m_(&m) {
  const Field& f = m.field();
  const std::size_t d = m.dim();
  std::uint64_t power = f.q();
  while (power < d) power *= f.q(), ++exponent_steps_;
  if (d == 0) return;

  std::vector<Mat> ads;
  for (std::size_t k = 0; k < d; ++k) ads.push_back(m.ad_basis(k));
  // incremental echelon over the rows (r, c) -> (ad_{b_k}(r, c))_k
  std::vector<Vec> reduced;
  std::vector<std::size_t> pivots;
  std::vector<Vec> chosen;
  for (std::size_t e = 0; e < d * d && reduced.size() < d; ++e) {
    Vec row(d);
    for (std::size_t k = 0; k < d; ++k) row[k] = ads[k](e / d, e % d);
    Vec r = row;
    for (std::size_t i = 0; i < reduced.size(); ++i)
      if (r[pivots[i]].code) f.axpy(r, f.neg(r[pivots[i]]), reduced[i]);
    const auto it = std::find_if(r.begin(), r.end(), [](Elem v) { return v.code != 0; });
    if (it == r.end()) continue;
    const std::size_t p = static_cast<std::size_t>(it - r.begin());
    f.scale(r, f.inv(r[p]));
    for (auto& other : reduced)
      if (other[p].code) f.axpy(other, f.neg(other[p]), r);
    reduced.push_back(std::move(r));
    pivots.push_back(p);
    rows_.push_back(e);
    chosen.push_back(std::move(row));
  }
  solver_.emplace(Mat::from_rows(f, chosen, d));
}

std::optional<Vec> SemisimpleExtractor::extract(std::span<const Elem> x) const {
  const std::size_t d = m_->dim();
  if (d == 0 || rows_.empty()) return std::nullopt;
  Mat b = m_->ad(x);
  for (std::uint64_t j = 0; j < exponent_steps_; ++j) b = la::mat_pow(b, m_->field().q());
  if (b.is_zero()) return std::nullopt;
  Vec rhs(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) rhs[i] = b(rows_[i] / d, rows_[i] % d);
  auto h = solver_->solve(rhs);
  if (!h || !(m_->ad(*h) == b)) return std::nullopt;
  return h;
}

std::optional<Vec> random_semisimple_element(const SemisimpleExtractor& ex, Rng& rng, int tries) {
  const StructAlgebra& m = ex.algebra();
  const Subspace all = Subspace::full(m.field(), m.dim());
  if (all.is_zero()) return std::nullopt;
  for (int t = 0; t < tries; ++t)
    if (auto h = ex.extract(random_nonzero(all, rng))) return h;
  return std::nullopt;
}

const char* to_string(ToralFailure f) {
  switch (f) {
    case ToralFailure::none: return "ok";
    case ToralFailure::not_commutative: return "not commutative";
    case ToralFailure::not_semisimple: return "not semisimple";
    case ToralFailure::not_split: return "not split";
    case ToralFailure::not_diagonalizable: return "not simultaneously diagonalizable";
    case ToralFailure::wrong_dimension: return "wrong dimension";
  }
  return "?";
}

ToralCheck is_split_toral(const StructAlgebra& L, const Subspace& h, std::optional<std::size_t> d) {
  const Field& f = L.field();
  const std::size_t n = L.dim();
  ToralCheck out;
  auto fail = [&](ToralFailure why, std::string detail) {
    out.failure = why;
    out.detail = std::move(detail);
    return out;
  };
  for (std::size_t i = 0; i < h.dim(); ++i)
    for (std::size_t j = i + 1; j < h.dim(); ++j)
      if (!is_zero(L.bracket(h.basis().row(i), h.basis().row(j))))
        return fail(ToralFailure::not_commutative,
                    "[h" + std::to_string(i) + ", h" + std::to_string(j) + "] != 0");

  ToralCertificate cert;
  cert.H = h;
  std::vector<Mat> ads;
  for (std::size_t i = 0; i < h.dim(); ++i) {
    ads.push_back(L.ad(h.basis().row(i)));
    Poly m = la::min_poly(ads.back());
    if (!ff::is_squarefree(m))
      return fail(ToralFailure::not_semisimple, "min poly of ad h" + std::to_string(i) + " is " + m.str());
    if (!ff::divides_xq_minus_x(m))
      return fail(ToralFailure::not_split, "min poly of ad h" + std::to_string(i) + " is " + m.str());
    cert.min_polys.push_back(std::move(m));
  }

  struct Block {
    Subspace space;
    std::vector<Elem> values;
  };
  std::vector<Block> blocks = {{Subspace::full(f, n), {}}};
  for (std::size_t i = 0; i < ads.size(); ++i) {
    std::vector<Block> next;
    for (const auto& b : blocks) {
      Mat a(f, b.space.dim(), b.space.dim());
      for (std::size_t j = 0; j < b.space.dim(); ++j) {
        const Vec v = ads[i].apply(b.space.basis().row(j));
        if (!b.space.contains(v)) return fail(ToralFailure::not_diagonalizable, "eigenspace not stable");
        a.set_col(j, b.space.coordinates(v));
      }
      auto roots = ff::roots_in_field(la::min_poly(a));
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
      std::size_t total = 0;
      for (Elem lambda : roots) {
        const Subspace e = la::eigenspace(a, lambda);
        std::vector<Vec> vs;
        for (std::size_t r = 0; r < e.dim(); ++r) vs.push_back(b.space.combine(e.basis().row(r)));
        auto vals = b.values;
        vals.push_back(lambda);
        total += e.dim();
        next.push_back({Subspace::span(f, n, vs), std::move(vals)});
      }
      if (total != b.space.dim()) return fail(ToralFailure::not_diagonalizable, "eigenvalues outside the field");
    }
    blocks = std::move(next);
  }
  cert.eigenbasis = Mat(f, 0, n);
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.space.dim(); ++r) cert.eigenbasis.append_row(b.space.basis().row(r));
    cert.weights.push_back({b.values, b.space.dim()});
  }
  cert.rank = h.dim();
  out.certificate = std::move(cert);
  if (d && h.dim() != *d)
    return fail(ToralFailure::wrong_dimension,
                "dim H = " + std::to_string(h.dim()) + ", expected " + std::to_string(*d));
  return out;
}

bool is_regular_semisimple(const StructAlgebra& L, std::span<const Elem> x) {
  const Subspace t = centralizer(L, x);
  if (!derived(L, t).is_zero()) return false;
  for (std::size_t i = 0; i < t.dim(); ++i)
    if (!is_semisimple_element(L, t.basis().row(i))) return false;
  const Subspace c = centralizer(L, t);
  const SemisimpleExtractor ex(L);
  for (std::size_t i = 0; i < c.dim(); ++i)
    if (auto s = ex.extract(c.basis().row(i)); s && !t.contains(*s)) return false;
  return true;
}

Vec Scrambled::map(std::span<const Elem> v) const { return vec_mat(v, to_new); }

Subspace Scrambled::map(const Subspace& u) const {
  std::vector<Vec> vs;
  for (std::size_t i = 0; i < u.dim(); ++i) vs.push_back(map(u.basis().row(i)));
  return Subspace::span(to_new.field(), to_new.cols(), vs);
}

Scrambled change_basis(const StructAlgebra& L, const Mat& p) {
  const Field& f = L.field();
  const std::size_t n = L.dim();
  Scrambled out{StructAlgebra(f, n), p, la::inverse(p)};
  for (std::size_t i = 0; i < n; ++i) {
    const Mat a = L.ad(p.row(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec c = vec_mat(a.apply(p.row(j)), out.to_new);
      std::vector<Term> t;
      for (std::size_t k = 0; k < n; ++k)
        if (c[k].code) t.push_back({static_cast<std::uint32_t>(k), c[k]});
      if (!t.empty()) out.algebra.set_product(i, j, std::move(t));
    }
  }
  out.algebra.provenance = L.provenance;
  return out;
}

Scrambled scramble(const StructAlgebra& L, Rng& rng) {
  const Field& f = L.field();
  const std::size_t n = L.dim();
  for (;;) {
    Mat p(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = f.random(rng);
    if (la::rank(p) == n) return change_basis(L, p);
  }
}

}  // namespace toral::lie
