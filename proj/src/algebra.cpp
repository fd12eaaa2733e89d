#include "toral/algebra.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace toral {

StructAlgebra::StructAlgebra(Field f, std::size_t dim)
    : f_(std::move(f)), dim_(dim), table_(dim * dim) {}

StructAlgebra StructAlgebra::from_constants(const Field& f, std::size_t dim,
                                            const std::vector<Constant>& constants) {
  StructAlgebra a(f, dim);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::map<std::uint32_t, Elem>> acc;
  for (const auto& [i, j, k, c] : constants) {
    if (i >= dim || j >= dim || k >= dim) throw std::invalid_argument("structure constant index out of range");
    if (i >= j) throw std::invalid_argument("structure constants must have i < j");
    if (c.code >= f.q()) throw std::invalid_argument("structure constant is not a field element");
    Elem& slot = acc[{i, j}][k];
    slot = f.add(slot, c);
  }
  for (const auto& [ij, terms] : acc) {
    std::vector<Term> t;
    for (const auto& [k, c] : terms)
      if (c.code) t.push_back({k, c});
    a.set_product(ij.first, ij.second, std::move(t));
  }
  return a;
}

void StructAlgebra::set_product(std::size_t i, std::size_t j, std::vector<Term> terms) {
  if (i >= j || j >= dim_) throw std::invalid_argument("set_product needs i < j < dim");
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.k < b.k; });
  terms.erase(std::remove_if(terms.begin(), terms.end(), [](const Term& t) { return t.c.code == 0; }),
              terms.end());
  table_[i * dim_ + j] = std::move(terms);
}

Vec StructAlgebra::basis_bracket(std::size_t i, std::size_t j) const {
  Vec v(dim_);
  if (i == j) return v;
  const bool flip = i > j;
  for (const auto& t : product(std::min(i, j), std::max(i, j))) v[t.k] = flip ? f_.neg(t.c) : t.c;
  return v;
}

Vec StructAlgebra::unit(std::size_t i) const {
  Vec v(dim_);
  v[i] = f_.one();
  return v;
}

Vec StructAlgebra::bracket(std::span<const Elem> u, std::span<const Elem> w) const {
  if (u.size() != dim_ || w.size() != dim_) throw std::invalid_argument("bracket: dimension mismatch");
  Vec out(dim_);
  std::vector<std::size_t> nu, nw;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (u[i].code) nu.push_back(i);
    if (w[i].code) nw.push_back(i);
  }
  for (auto i : nu)
    for (auto j : nw) {
      if (i == j) continue;
      Elem c = f_.mul(u[i], w[j]);
      const auto& terms = i < j ? product(i, j) : product(j, i);
      if (i > j) c = f_.neg(c);
      for (const auto& t : terms) out[t.k] = f_.add(out[t.k], f_.mul(c, t.c));
    }
  return out;
}

Mat StructAlgebra::ad(std::span<const Elem> x) const {
  if (x.size() != dim_) throw std::invalid_argument("ad: dimension mismatch");
  Mat m(f_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].code == 0) continue;
    const Elem xi = x[i], nxi = f_.neg(x[i]);
    for (std::size_t j = 0; j < dim_; ++j) {
      if (i == j) continue;
      const Elem c = i < j ? xi : nxi;
      for (const auto& t : i < j ? product(i, j) : product(j, i))
        m(t.k, j) = f_.add(m(t.k, j), f_.mul(c, t.c));
    }
  }
  return m;
}

Mat StructAlgebra::ad_basis(std::size_t i) const { return ad(unit(i)); }

bool StructAlgebra::is_abelian() const {
  return std::all_of(table_.begin(), table_.end(), [](const auto& t) { return t.empty(); });
}

bool StructAlgebra::satisfies_jacobi() const {
  auto with_basis = [&](const Vec& w, std::size_t m) {
    Vec out(dim_);
    for (std::size_t t = 0; t < dim_; ++t) {
      if (w[t].code == 0 || t == m) continue;
      const Elem c = t < m ? w[t] : f_.neg(w[t]);
      for (const auto& term : t < m ? product(t, m) : product(m, t))
        out[term.k] = f_.add(out[term.k], f_.mul(c, term.c));
    }
    return out;
  };
  std::vector<Vec> prod(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j) prod[i * dim_ + j] = basis_bracket(i, j);
  const Elem minus = f_.neg(f_.one());
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      for (std::size_t k = j + 1; k < dim_; ++k) {
        // [[i,j],k] + [[j,k],i] + [[k,i],j] with [k,i] = -[i,k]
        Vec s = with_basis(prod[i * dim_ + j], k);
        f_.axpy(s, f_.one(), with_basis(prod[j * dim_ + k], i));
        f_.axpy(s, minus, with_basis(prod[i * dim_ + k], j));
        for (auto e : s)
          if (e.code) return false;
      }
  return true;
}

std::vector<Constant> StructAlgebra::constants() const {
  std::vector<Constant> out;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      for (const auto& t : product(i, j))
        out.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), t.k, t.c);
  return out;
}

bool operator==(const StructAlgebra& a, const StructAlgebra& b) {
  return a.f_ == b.f_ && a.dim_ == b.dim_ && a.constants() == b.constants();
}

}  // namespace toral
