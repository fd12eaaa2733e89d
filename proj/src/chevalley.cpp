#include "toral/chevalley.hpp"

#include <numeric>
#include <stdexcept>

namespace toral::chev {

namespace {

struct Frac {
  std::int64_t n = 0, d = 1;
  Frac(std::int64_t num = 0, std::int64_t den = 1) : n(num), d(den) {
    if (d < 0) n = -n, d = -d;
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) n /= g, d /= g;
  }
  friend Frac operator+(Frac a, Frac b) { return Frac(a.n * b.d + b.n * a.d, a.d * b.d); }
  friend Frac operator*(Frac a, Frac b) { return Frac(a.n * b.n, a.d * b.d); }
  friend Frac operator/(Frac a, Frac b) { return Frac(a.n * b.d, a.d * b.n); }
};

// Structure constants N_{a,b} of the usual Chevalley basis
// ([h, e_a] = a(h) e_a, [e_a, e_{-a}] = h_a), fixed by declaring N = +(p+1)
// on extraspecial pairs.
class StandardConstants {
 public:
  explicit StandardConstants(const rd::RootSystem& rs)
      : rs_(rs), r_(rs.size()), npos_(rs.num_positive()), sum_(r_ * r_, -1),
        memo_(r_ * r_), known_(r_ * r_, false), extra_(npos_, -1) {
    for (std::size_t a = 0; a < r_; ++a)
      for (std::size_t b = 0; b < r_; ++b) {
        rd::IVec s = rs.roots[a];
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += rs.roots[b][i];
        sum_[a * r_ + b] = rs.index_of(s);
      }
    for (std::size_t xi = 0; xi < npos_; ++xi)
      for (std::size_t a = 0; a < npos_ && extra_[xi] < 0; ++a) {
        rd::IVec d = rs.roots[xi];
        for (std::size_t i = 0; i < d.size(); ++i) d[i] -= rs.roots[a][i];
        const int b = rs.index_of(d);
        if (b >= 0 && static_cast<std::size_t>(b) < npos_) extra_[xi] = static_cast<int>(a);
      }
  }

  int sum(std::size_t a, std::size_t b) const { return sum_[a * r_ + b]; }

  // largest p with a - p b a root
  std::int64_t p(std::size_t a, std::size_t b) const {
    std::int64_t k = 0;
    std::size_t cur = a;
    for (;;) {
      const int next = sum(cur, rs_.negative(b));
      if (next < 0) return k;
      cur = static_cast<std::size_t>(next);
      ++k;
    }
  }

  std::int64_t N(std::size_t a, std::size_t b) {
    if (sum(a, b) < 0) return 0;
    const std::size_t key = a * r_ + b;
    if (known_[key]) return memo_[key];
    const std::int64_t v = compute(a, b);
    known_[key] = true;
    memo_[key] = v;
    return v;
  }

 private:
  std::int64_t norm(std::size_t a) const { return 2 * rs_.half_norm[a]; }
  bool pos(std::size_t a) const { return a < npos_; }
  std::size_t neg(std::size_t a) const { return rs_.negative(a); }

  std::int64_t compute(std::size_t a, std::size_t b) {
    const std::size_t g = static_cast<std::size_t>(sum(a, b));
    if (pos(a) && pos(b)) {
      if (a > b) return -N(b, a);
      const std::size_t a1 = static_cast<std::size_t>(extra_[g]);
      const std::size_t b1 = static_cast<std::size_t>(sum(g, neg(a1)));
      const std::int64_t p1 = p(b1, a1);
      if (a == a1) return p1 + 1;
      Frac t(0);
      const int u = sum(b, neg(a1)), v = sum(a, neg(b1));
      if (u >= 0 && v >= 0)
        t = t + Frac(N(b, neg(a1)) * N(a, neg(b1)), norm(static_cast<std::size_t>(u)));
      const int w = sum(a, neg(a1)), z = sum(b, neg(b1));
      if (w >= 0 && z >= 0)
        t = t + Frac(N(neg(a1), a) * N(b, neg(b1)), norm(static_cast<std::size_t>(w)));
      const Frac val = Frac(norm(g)) * t / Frac(p1 + 1);
      if (val.d != 1) throw std::logic_error("non-integral structure constant");
      return val.n;
    }
    if (!pos(a) && !pos(b)) return -N(neg(a), neg(b));
    if (!pos(a)) return -N(b, a);
    // a positive, b negative, g = a + b
    if (pos(g)) {
      const Frac val = Frac(norm(g), norm(a)) * Frac(N(b, neg(g)));
      if (val.d != 1) throw std::logic_error("non-integral structure constant");
      return val.n;
    }
    const Frac val = Frac(norm(g), norm(b)) * Frac(N(neg(g), a));
    if (val.d != 1) throw std::logic_error("non-integral structure constant");
    return val.n;
  }

  const rd::RootSystem& rs_;
  std::size_t r_, npos_;
  std::vector<int> sum_;
  std::vector<std::int64_t> memo_;
  std::vector<bool> known_;
  std::vector<int> extra_;
};

using IntVec = std::vector<std::int64_t>;

IntVec int_bracket_basis(const ChevalleyBasisInfo& info, const IntVec& w, std::size_t m) {
  const std::size_t d = info.dim();
  IntVec out(d, 0);
  for (std::size_t t = 0; t < d; ++t) {
    if (w[t] == 0 || t == m) continue;
    const std::int64_t c = t < m ? w[t] : -w[t];
    for (const auto& term : info.products[t < m ? t * d + m : m * d + t]) out[term.k] += c * term.c;
  }
  return out;
}

}  // namespace

bool integral_jacobi_holds(const ChevalleyBasisInfo& info) {
  const std::size_t d = info.dim();
  std::vector<IntVec> prod(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      IntVec v(d, 0);
      for (const auto& t : info.products[i * d + j]) v[t.k] += t.c;
      prod[i * d + j] = std::move(v);
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) {
        IntVec s = int_bracket_basis(info, prod[i * d + j], k);
        const IntVec s2 = int_bracket_basis(info, prod[j * d + k], i);
        const IntVec s3 = int_bracket_basis(info, prod[i * d + k], j);
        for (std::size_t t = 0; t < d; ++t)
          if (s[t] + s2[t] - s3[t] != 0) return false;
      }
  return true;
}

ChevalleyBasisInfo structure_constants(const rd::RootDatum& r) {
  const rd::RootSystem& rs = r.system();
  ChevalleyBasisInfo info;
  info.datum = r;
  info.n = static_cast<std::size_t>(r.rank());
  info.roots = rs.size();
  const std::size_t R = info.roots, n = info.n, d = info.dim();
  info.n_table.assign(R * R, 0);
  info.p_table.assign(R * R, 0);
  StandardConstants sc(rs);
  for (std::size_t a = 0; a < R; ++a)
    for (std::size_t b = 0; b < R; ++b) {
      info.p_table[a * R + b] = sc.p(a, b);
      if (sc.sum(a, b) < 0) continue;
      const std::int64_t v = -sc.N(a, b);
      if (std::abs(v) != sc.p(b, a) + 1) throw std::logic_error("structure constant has wrong size");
      info.n_table[a * R + b] = v;
    }

  info.products.assign(d * d, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < R; ++a) {
      const std::int64_t c = -r.root_x(a)[i];
      if (c) info.products[i * d + n + a].push_back({static_cast<std::uint32_t>(n + a), c});
    }
  for (std::size_t a = 0; a < R; ++a)
    for (std::size_t b = a + 1; b < R; ++b) {
      auto& slot = info.products[(n + a) * d + n + b];
      if (b == rs.negative(a)) {
        const auto& cv = r.coroot_y(a);
        for (std::size_t i = 0; i < n; ++i)
          if (cv[i]) slot.push_back({static_cast<std::uint32_t>(i), -cv[i]});
      } else if (const int s = sc.sum(a, b); s >= 0) {
        slot.push_back({static_cast<std::uint32_t>(n + s), info.N(a, b)});
      }
    }
  if (!integral_jacobi_holds(info)) throw std::logic_error("Chevalley table violates the Jacobi identity");
  return info;
}

ChevalleyAlgebra chevalley_algebra(const rd::RootDatum& r, const Field& f) {
  ChevalleyAlgebra out;
  out.info = structure_constants(r);
  const std::size_t d = out.info.dim();
  out.L = StructAlgebra(f, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const auto& src = out.info.products[i * d + j];
      if (src.empty()) continue;
      std::vector<Term> t;
      for (const auto& it : src) t.push_back({it.k, f.from_int(it.c)});
      out.L.set_product(i, j, std::move(t));
    }
  out.L.provenance = r.label() + " over " + f.name();
  std::vector<Vec> h;
  for (std::size_t i = 0; i < out.info.n; ++i) h.push_back(out.L.unit(i));
  out.H = Subspace::span(f, d, h);
  return out;
}

ChevalleyAlgebra chevalley_algebra(const std::string& label, const Field& f) {
  return chevalley_algebra(rd::parse_label(label), f);
}

Elem root_function(const rd::RootDatum& r, std::size_t root, std::span<const Elem> h, const Field& f) {
  if (h.size() != static_cast<std::size_t>(r.rank()))
    throw std::invalid_argument("root_function: wrong coordinate length");
  Elem acc = f.zero();
  for (std::size_t i = 0; i < h.size(); ++i)
    acc = f.add(acc, f.mul(h[i], f.from_int(r.root_x(root)[i])));
  return acc;
}

namespace {

Subspace joint_space(const ChevalleyAlgebra& c, const std::vector<Elem>& weight) {
  const Field& f = c.L.field();
  const std::size_t d = c.L.dim(), n = c.info.n;
  Mat stacked(f, n * d, d);
  for (std::size_t i = 0; i < n; ++i) {
    Mat a = c.L.ad_basis(i);
    // [w, h_i] = lambda w  <=>  (ad h_i + lambda) w = 0
    for (std::size_t r = 0; r < d; ++r) a(r, r) = f.add(a(r, r), weight[i]);
    for (std::size_t r = 0; r < d; ++r)
      std::copy(a.row(r).begin(), a.row(r).end(), stacked.row(i * d + r).begin());
  }
  return la::kernel(stacked);
}

}  // namespace

Subspace root_space(const ChevalleyAlgebra& c, std::size_t root) {
  const Field& f = c.L.field();
  std::vector<Elem> w(c.info.n);
  for (std::size_t i = 0; i < c.info.n; ++i) w[i] = f.from_int(c.info.datum.root_x(root)[i]);
  return joint_space(c, w);
}

Subspace zero_weight_space(const ChevalleyAlgebra& c) {
  return joint_space(c, std::vector<Elem>(c.info.n, c.L.field().zero()));
}

}  // namespace toral::chev
