#pragma once

// Las Vegas search for split maximal toral subalgebras: smtsa3 for odd
// characteristic, smtsa2 with the eigenspace case ladder for characteristic 2.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toral/liealg.hpp"

namespace toral::smtsa {

using lie::SubspaceHandle;
using lie::ToralCertificate;

struct SearchLimits {
  int max_tries = 25;     // semisimple draws per level before restarting
  int max_restarts = 10;  // full restarts before giving up
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument on negative tries or restarts. Zero tries
  /// still allows center steps and the abelian base case.
  void check() const;
};

enum class SplitCase { none, A, B, C, D, E, F };
const char* to_string(SplitCase c);

/// S = <V>, I = (V) and their derived algebras, with the first case of the
/// ladder whose guard holds.
struct EigenspaceShape {
  Subspace V, S, SS, I, II;
  SplitCase guard = SplitCase::none;
};
EigenspaceShape analyze_eigenspace(const StructAlgebra& M, const Subspace& V);
/// The ladder as a function of dim V, dim S, dim [S,S], dim I, dim [I,I].
SplitCase ladder(std::size_t v, std::size_t s, std::size_t ss, std::size_t i, std::size_t ii);

struct SmtsaTrace {
  std::vector<std::size_t> dims;  // dim H after each growth step of the last attempt
  std::size_t tries = 0;     // semisimple draws, over all restarts
  std::size_t restarts = 0;
  std::size_t center_steps = 0;
  std::size_t direct = 0;    // draws that were already split
  std::array<std::size_t, 7> guards{};  // indexed by SplitCase
  std::array<std::size_t, 7> solved{};
  std::size_t max_dim = 0;   // largest dim H reached
  double seconds = 0;

  std::size_t levels() const { return dims.size(); }

  friend bool operator==(const SmtsaTrace& a, const SmtsaTrace& b) {
    return a.dims == b.dims && a.tries == b.tries && a.restarts == b.restarts &&
           a.center_steps == b.center_steps && a.direct == b.direct && a.guards == b.guards &&
           a.solved == b.solved && a.max_dim == b.max_dim;
  }
};

struct SmtsaResult {
  bool ok = false;
  std::size_t d = 0;  // target dimension
  std::optional<ToralCertificate> certificate;
  SmtsaTrace trace;
  std::string failure;
};

/// h' in M with phi(h') split semisimple in L, or nullopt. `trace` may be null.
std::optional<Vec> find_split_semisimple_elt(const Subspace& V, const SubspaceHandle& M, const StructAlgebra& L,
                                             ff::Rng& rng, SmtsaTrace* trace = nullptr);

SmtsaResult smtsa3(const StructAlgebra& L, const SearchLimits& limits = {});
SmtsaResult smtsa2(const StructAlgebra& L, const SearchLimits& limits = {});
/// smtsa2 in characteristic 2, smtsa3 otherwise.
SmtsaResult solve(const StructAlgebra& L, const SearchLimits& limits = {});

/// Rechecks a successful result against a freshly computed reductive rank.
bool verify_result(const StructAlgebra& L, const SmtsaResult& r, std::uint64_t seed = 7);

}  // namespace toral::smtsa
