#pragma once

// Irreducible root systems and root data of every isogeny type.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace toral::rd {

using IVec = std::vector<std::int64_t>;
using IMat = std::vector<IVec>;

enum class Type : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct RootSystem {
  Type type = Type::A;
  int rank = 0;
  IMat cartan;                  // cartan[i][j] = <alpha_i, alpha_j^vee>
  std::vector<IVec> roots;      // simple-root coordinates
  std::vector<IVec> coroots;    // simple-coroot coordinates, coroots[i] = roots[i]^vee
  std::vector<std::int64_t> half_norm;  // (alpha, alpha) / 2, short roots scaled to 1

  std::string name() const;
  std::size_t size() const { return roots.size(); }
  std::size_t num_positive() const { return roots.size() / 2; }
  int height(std::size_t i) const;
  /// Index of the root with the given coordinates, or -1.
  int index_of(const IVec& coords) const;
  /// Index of -roots[i].
  std::size_t negative(std::size_t i) const { return i < num_positive() ? i + num_positive() : i - num_positive(); }
  bool is_long(std::size_t i) const;
  /// <beta, alpha^vee> for roots given by index.
  std::int64_t pairing(std::size_t beta, std::size_t alpha) const;

  std::map<IVec, int> index;
};

/// Roots in order: positive roots by height, ties broken by descending
/// lexicographic order of their coordinates, then the negatives in the same
/// order. Throws std::invalid_argument for inadmissible (type, rank); C2 is
/// returned as B2.
RootSystem root_system(Type type, int rank);
RootSystem root_system(const std::string& name);

class RootDatum {
 public:
  const RootSystem& system() const { return sys_; }
  int rank() const { return sys_.rank; }
  /// "ad", "sc", "2" (for A_n^(2)), "1", "n-1", "n"; empty for trivial
  /// fundamental group.
  const std::string& isogeny() const { return iso_; }
  std::string label() const;

  /// Basis of X as rows in fundamental-weight coordinates.
  const IMat& x_basis() const { return x_basis_; }
  /// Root i in the X basis; entry j is <alpha, y_j>.
  const IVec& root_x(std::size_t i) const { return root_x_[i]; }
  /// Coroot i in the Y basis (dual to the X basis).
  const IVec& coroot_y(std::size_t i) const { return coroot_y_[i]; }
  /// <x, y> for x in X coordinates and y in Y coordinates.
  static std::int64_t pairing(const IVec& x, const IVec& y);

  friend RootDatum root_datum(Type, int, const std::string&);

 private:
  RootSystem sys_;
  std::string iso_;
  IMat x_basis_;
  IMat root_x_;
  IMat coroot_y_;
};

/// isogeny: "ad", "sc", a divisor k of n+1 for A_n, "1" / "n-1" / "n" for D_n.
/// For E8, F4 and G2 any of "", "ad", "sc" gives the unique datum.
RootDatum root_datum(Type type, int rank, const std::string& isogeny);
/// Every root datum label of rank <= max_rank, up to isomorphism.
std::vector<std::string> all_labels(int max_rank);
/// Parses "A3:sc", "A5:2", "D6:n-1", "B4:ad", "E8".
RootDatum parse_label(const std::string& label);

/// Nontrivial invariant factors of the weight lattice modulo the root lattice.
std::vector<std::int64_t> fundamental_group(Type type, int rank);
/// Nontrivial invariant factors of X / Z Phi.
std::vector<std::int64_t> x_mod_root_lattice(const RootDatum& r);

/// Smith normal form diagonal of an integer matrix (nonzero entries only).
std::vector<std::int64_t> smith_diagonal(IMat m);
/// Hermite basis of the lattice spanned by the rows.
IMat lattice_basis(IMat rows);
std::int64_t determinant(const IMat& m);

}  // namespace toral::rd
