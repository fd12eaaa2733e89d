#pragma once

// Lie algebras given by structure constants [b_i, b_j] = sum_k c_ijk b_k.

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "toral/linalg.hpp"

namespace toral {

using ff::Elem;
using ff::Field;
using ff::Vec;
using la::Mat;
using la::Subspace;

struct Term {
  std::uint32_t k;
  Elem c;
};

using Constant = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, Elem>;

class StructAlgebra {
 public:
  StructAlgebra() = default;
  StructAlgebra(Field f, std::size_t dim);
  /// From quadruples (i, j, k, c) with i < j; repeated (i, j, k) entries add up.
  static StructAlgebra from_constants(const Field& f, std::size_t dim,
                                      const std::vector<Constant>& constants);

  const Field& field() const { return f_; }
  std::size_t dim() const { return dim_; }

  /// Sets [b_i, b_j] for i < j (and so [b_j, b_i] = -[b_i, b_j]).
  void set_product(std::size_t i, std::size_t j, std::vector<Term> terms);
  /// Terms of [b_i, b_j] for i < j.
  const std::vector<Term>& product(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }
  Vec basis_bracket(std::size_t i, std::size_t j) const;

  Vec bracket(std::span<const Elem> u, std::span<const Elem> w) const;
  /// Matrix of w -> [x, w]; column j is [x, b_j].
  Mat ad(std::span<const Elem> x) const;
  Mat ad_basis(std::size_t i) const;
  Vec unit(std::size_t i) const;

  bool is_abelian() const;
  /// Checks [b_i, b_i] = 0 and the Jacobi identity on all basis triples.
  bool satisfies_jacobi() const;
  /// Nonzero constants with i < j, sorted.
  std::vector<Constant> constants() const;

  std::string provenance;

  friend bool operator==(const StructAlgebra& a, const StructAlgebra& b);

 private:
  Field f_;
  std::size_t dim_ = 0;
  std::vector<std::vector<Term>> table_;  // index i * dim + j, only i < j used
};

}  // namespace toral
