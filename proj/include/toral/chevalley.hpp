#pragma once

// Chevalley Lie algebras L_F(R) built from a root datum.
//
// Basis order: h_1..h_n (the Y basis), then X_alpha in root order. The
// multiplication follows
//   [h_i, h_j] = 0,  [X_a, h_i] = <a, y_i> X_a,  [X_{-a}, X_a] = a^vee,
//   [X_a, X_b] = N_{a,b} X_{a+b}.

#include <cstdint>
#include <vector>

#include "toral/algebra.hpp"
#include "toral/rootdata.hpp"

namespace toral::chev {

struct IntTerm {
  std::uint32_t k;
  std::int64_t c;
};

struct ChevalleyBasisInfo {
  rd::RootDatum datum;
  std::size_t n = 0;      // rank
  std::size_t roots = 0;  // |Phi|
  std::vector<std::int64_t> n_table;  // N_{a,b} at a * roots + b, 0 when a + b is not a root
  std::vector<std::int64_t> p_table;  // p_{a,b}: largest p with a - p b a root
  std::vector<std::vector<IntTerm>> products;  // integer [b_i, b_j] for i < j at i * dim + j

  std::size_t dim() const { return n + roots; }
  std::int64_t N(std::size_t a, std::size_t b) const { return n_table[a * roots + b]; }
  std::int64_t p(std::size_t a, std::size_t b) const { return p_table[a * roots + b]; }
  std::size_t h_index(std::size_t i) const { return i; }
  std::size_t x_index(std::size_t root) const { return n + root; }
};

/// Integral structure constants; throws std::logic_error if the table fails
/// the Jacobi identity over the integers.
ChevalleyBasisInfo structure_constants(const rd::RootDatum& r);
/// Jacobi identity and antisymmetry over the integers on all basis triples.
bool integral_jacobi_holds(const ChevalleyBasisInfo& info);

struct ChevalleyAlgebra {
  ChevalleyBasisInfo info;
  StructAlgebra L;
  Subspace H;  // span of h_1..h_n
};

ChevalleyAlgebra chevalley_algebra(const rd::RootDatum& r, const Field& f);
ChevalleyAlgebra chevalley_algebra(const std::string& label, const Field& f);

/// alpha-bar(h) = sum_i t_i <alpha, y_i> for h = sum t_i h_i.
Elem root_function(const rd::RootDatum& r, std::size_t root, std::span<const Elem> h,
                   const Field& f);

/// {w : [w, h_i] = alpha-bar(h_i) w for all i}.
Subspace root_space(const ChevalleyAlgebra& c, std::size_t root);
/// {w : [w, h_i] = 0 for all i}.
Subspace zero_weight_space(const ChevalleyAlgebra& c);

}  // namespace toral::chev
