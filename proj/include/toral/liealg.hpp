#pragma once

// Subalgebras, centralizers, quotients, Cartan subalgebras and semisimplicity
// tests for structure-constant Lie algebras.
//
// ad_x is the matrix of w -> [x, w]. With this convention H_std acts on X_a
// with eigenvalue -a(h).

#include <optional>
#include <string>
#include <vector>

#include "toral/algebra.hpp"

namespace toral::lie {

using ff::Poly;
using ff::Rng;

Vec random_vector(const Subspace& v, Rng& rng);
/// Uniform over nonzero vectors of v (v must be nonzero).
Vec random_nonzero(const Subspace& v, Rng& rng);

/// span{[u, w] : u in U, w in W}.
Subspace product_space(const StructAlgebra& L, const Subspace& u, const Subspace& w);
Subspace derived(const StructAlgebra& L, const Subspace& u);
bool is_subalgebra(const StructAlgebra& L, const Subspace& u);
bool is_ideal(const StructAlgebra& L, const Subspace& u);

Subspace subalgebra_closure(const StructAlgebra& L, const Subspace& v);
Subspace ideal_closure(const StructAlgebra& L, const Subspace& v);

Subspace center(const StructAlgebra& L);
Subspace centralizer(const StructAlgebra& L, std::span<const Elem> x);
Subspace centralizer(const StructAlgebra& L, const Subspace& u);
Subspace normalizer(const StructAlgebra& L, const Subspace& u);
/// Lower central series of the subalgebra u reaches zero.
bool is_nilpotent(const StructAlgebra& L, const Subspace& u);

/// ad_x restricted to an ad_x-stable subspace u, in echelon coordinates of u.
Mat restricted_ad(const StructAlgebra& L, std::span<const Elem> x, const Subspace& u);
/// Structure constants of the subalgebra u on its echelon basis. Throws
/// std::invalid_argument if u is not closed.
StructAlgebra induced_algebra(const StructAlgebra& L, const Subspace& u);

struct Quotient {
  StructAlgebra algebra;
  la::QuotientMap map;  // section rows are representatives in L
};
/// L / K; throws std::invalid_argument if K is not an ideal.
Quotient quotient_algebra(const StructAlgebra& L, const Subspace& k);

/// A subquotient M of L together with the pullback phi: M -> L, stored as the
/// matrix whose row i is phi(m_i).
struct SubspaceHandle {
  StructAlgebra M;
  Mat phi;

  Vec pull(std::span<const Elem> m) const;
  /// phi(U) for a subspace U of M.
  Subspace pull(const Subspace& u) const;
};

SubspaceHandle identity_handle(const StructAlgebra& L);
/// C / K for a subalgebra C of M and an ideal K of C (both in M coordinates),
/// with the composed pullback.
SubspaceHandle descend(const SubspaceHandle& h, const Subspace& c, const Subspace& k);

/// Over GF(q^m) via the given embedding of the base field.
StructAlgebra extend_scalars(const StructAlgebra& L, const ff::Embedding& e);

/// Nilpotent self-normalizing subalgebra, by descent through Fitting null
/// components of random elements. nullopt when the random choices run out,
/// which happens over very small fields.
std::optional<Subspace> cartan_subalgebra(const StructAlgebra& L, Rng& rng, int attempts = 8);
/// dim C_L(Hhat). Falls back to an extension field of order > dim L when no
/// Cartan subalgebra is found over the base field; throws std::runtime_error
/// if that fails as well.
std::size_t reductive_rank(const StructAlgebra& L, Rng& rng);

/// min_poly(ad_x) squarefree.
bool is_semisimple_element(const StructAlgebra& L, std::span<const Elem> x);
/// min_poly(ad_x) divides x^q - x.
bool is_split_semisimple(const StructAlgebra& L, std::span<const Elem> x);

/// Produces h with ad_h = (ad_x)^(q^j), q^j >= dim M: a semisimple element
/// obtained from x by the p-power map. Keeps a pointer to M.
class SemisimpleExtractor {
 public:
  explicit SemisimpleExtractor(const StructAlgebra& m);
  /// nullopt if (ad_x)^(q^j) is zero or not inner.
  std::optional<Vec> extract(std::span<const Elem> x) const;
  const StructAlgebra& algebra() const { return *m_; }

 private:
  const StructAlgebra* m_;
  std::uint64_t exponent_steps_ = 1;
  std::vector<std::size_t> rows_;  // entries of ad that determine x modulo the center
  std::optional<la::LinearSolver> solver_;
};

/// Nonzero semisimple element of M, or nullopt after `tries` draws.
std::optional<Vec> random_semisimple_element(const SemisimpleExtractor& ex, Rng& rng, int tries = 16);

struct Weight {
  std::vector<Elem> values;  // eigenvalue of ad_{h_i} for each basis vector h_i of H
  std::size_t multiplicity = 0;
};

struct ToralCertificate {
  Subspace H;
  std::vector<Poly> min_polys;  // of ad_{h_i}
  Mat eigenbasis;               // rows: a joint eigenbasis of L
  std::vector<Weight> weights;
  std::size_t rank = 0;
};

enum class ToralFailure { none, not_commutative, not_semisimple, not_split, not_diagonalizable, wrong_dimension };
const char* to_string(ToralFailure f);

struct ToralCheck {
  ToralFailure failure = ToralFailure::none;
  std::string detail;
  std::optional<ToralCertificate> certificate;
  bool ok() const { return failure == ToralFailure::none; }
};

/// Checks that H is commutative, split semisimple and (when d is given) of
/// dimension d, and builds the joint eigenbasis.
ToralCheck is_split_toral(const StructAlgebra& L, const Subspace& h, std::optional<std::size_t> d = std::nullopt);

/// C_L(x) is commutative, consists of semisimple elements and contains the
/// semisimple parts of everything in C_L(C_L(x)).
bool is_regular_semisimple(const StructAlgebra& L, std::span<const Elem> x);

struct Scrambled {
  StructAlgebra algebra;
  Mat basis;   // row i: new basis vector i in old coordinates
  Mat to_new;  // v_new = v_old * to_new

  Vec map(std::span<const Elem> v) const;
  Subspace map(const Subspace& u) const;
};

/// The table on the basis given by the rows of p (invertible).
Scrambled change_basis(const StructAlgebra& L, const Mat& p);
/// change_basis with a uniformly random invertible matrix.
Scrambled scramble(const StructAlgebra& L, Rng& rng);

}  // namespace toral::lie
