#include "toral/smtsa.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace toral::smtsa {

using ff::Rng;
using lie::SemisimpleExtractor;

void SearchLimits::check() const {
  if (max_tries < 0) throw std::invalid_argument("max_tries must be non-negative");
  if (max_restarts < 0) throw std::invalid_argument("max_restarts must be non-negative");
}

const char* to_string(SplitCase c) {
  switch (c) {
    case SplitCase::none: return "-";
    case SplitCase::A: return "A";
    case SplitCase::B: return "B";
    case SplitCase::C: return "C";
    case SplitCase::D: return "D";
    case SplitCase::E: return "E";
    case SplitCase::F: return "F";
  }
  return "?";
}

namespace {

bool is_zero(std::span<const Elem> v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e.code == 0; });
}

bool even_nonzero(std::size_t n) { return n != 0 && n % 2 == 0; }

// h in `domain` with [h, e] = e for every e in `target`.
std::optional<Vec> solve_action(const StructAlgebra& M, const Subspace& domain, const Subspace& target) {
  const Field& f = M.field();
  const std::size_t n = M.dim(), t = target.dim();
  Mat a(f, t * n, domain.dim());
  Vec b(t * n);
  for (std::size_t k = 0; k < t; ++k) {
    const auto e = target.basis().row(k);
    std::copy(e.begin(), e.end(), b.begin() + static_cast<std::ptrdiff_t>(k * n));
    for (std::size_t j = 0; j < domain.dim(); ++j) {
      const Vec c = M.bracket(domain.basis().row(j), e);
      for (std::size_t r = 0; r < n; ++r) a(k * n + r, j) = c[r];
    }
  }
  const auto coeffs = la::solve(a, b);
  if (!coeffs) return std::nullopt;
  Vec h = domain.combine(*coeffs);
  for (std::size_t k = 0; k < t; ++k) {
    const auto e = target.basis().row(k);
    if (M.bracket(h, e) != Vec(e.begin(), e.end()))
      throw std::logic_error("solved element does not act as the identity");
  }
  return h;
}

Subspace add(const Subspace& h, const Vec& v) {
  return la::sum(h, Subspace::span(h.field(), h.ambient(), {v}));
}

SubspaceHandle descend_by(const SubspaceHandle& m, const Vec& h) {
  return lie::descend(m, lie::centralizer(m.M, h), Subspace::span(m.M.field(), m.M.dim(), {h}));
}

std::vector<Elem> distinct_eigenvalues(const Mat& a) {
  auto roots = ff::roots_in_field(la::min_poly(a));
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

struct Attempt {
  const StructAlgebra& L;
  std::size_t d;
  const SearchLimits& limits;
  Rng& rng;
  SmtsaTrace& trace;

  bool split(const Vec& v) const { return lie::is_split_semisimple(L, v); }

  void grew(const Subspace& h) {
    trace.dims.push_back(h.dim());
    trace.max_dim = std::max(trace.max_dim, h.dim());
  }

  std::optional<Subspace> run2() {
    Subspace H(L.field(), L.dim());
    SubspaceHandle M = lie::identity_handle(L);
    std::optional<SemisimpleExtractor> ex;
    int tries = 0;
    while (M.M.dim() > 0 && H.dim() < d) {
      const Subspace z = lie::center(M.M);
      if (!z.is_zero()) {
        const std::size_t before = H.dim();
        for (std::size_t i = 0; i < z.dim(); ++i) {
          const Vec v = M.pull(z.basis().row(i));
          if (split(v)) H = add(H, v);
        }
        M = lie::descend(M, Subspace::full(M.M.field(), M.M.dim()), z);
        ex.reset();
        ++trace.center_steps;
        if (H.dim() > before) grew(H);
        continue;
      }
      if (tries++ >= limits.max_tries) return std::nullopt;
      ++trace.tries;
      if (!ex) ex.emplace(M.M);
      const auto h = lie::random_semisimple_element(*ex, rng);
      if (!h) continue;
      std::optional<Vec> hp;
      if (split(M.pull(*h))) {
        hp = h;
        ++trace.direct;
      } else {
        const Mat a = M.M.ad(*h);
        for (Elem v : distinct_eigenvalues(a)) {
          hp = find_split_semisimple_elt(la::eigenspace(a, v), M, L, rng, &trace);
          if (hp) break;
        }
      }
      if (!hp) continue;
      H = add(H, M.pull(*hp));
      M = descend_by(M, *hp);
      ex.reset();
      tries = 0;
      grew(H);
    }
    if (H.dim() != d) return std::nullopt;
    return H;
  }

  std::optional<Subspace> run3() {
    const Field& f = L.field();
    Subspace H(f, L.dim());
    SubspaceHandle M = lie::identity_handle(L);
    std::optional<SemisimpleExtractor> ex;
    int tries = 0;
    while (M.M.dim() > 0 && H.dim() < d) {
      if (M.M.is_abelian()) {
        const Subspace image = M.pull(Subspace::full(f, M.M.dim()));
        bool all_split = true;
        for (std::size_t i = 0; i < image.dim() && all_split; ++i) all_split = split(image.vec(i));
        if (all_split) {
          H = la::sum(H, image);
          grew(H);
          break;
        }
      }
      if (tries++ >= limits.max_tries) return std::nullopt;
      ++trace.tries;
      if (!ex) ex.emplace(M.M);
      const auto h = lie::random_semisimple_element(*ex, rng);
      if (!h) continue;
      const Mat a = M.M.ad(*h);
      const auto values = distinct_eigenvalues(a);
      std::optional<Vec> hp;
      for (Elem v : values) {
        const Elem w = f.neg(v);
        if (v.code == 0 || w < v || !std::binary_search(values.begin(), values.end(), w)) continue;
        const Vec sp = lie::random_vector(la::eigenspace(a, v), rng);
        const Vec sm = lie::random_vector(la::eigenspace(a, w), rng);
        Vec c = M.M.bracket(sp, sm);
        if (!is_zero(c) && split(M.pull(c))) {
          hp = std::move(c);
          break;
        }
      }
      if (!hp) continue;
      H = add(H, M.pull(*hp));
      M = descend_by(M, *hp);
      ex.reset();
      tries = 0;
      grew(H);
    }
    if (H.dim() != d) return std::nullopt;
    return H;
  }
};

template <class Body>
SmtsaResult search(const StructAlgebra& L, const SearchLimits& limits, Body body) {
  limits.check();
  const auto start = std::chrono::steady_clock::now();
  SmtsaResult out;
  Rng rng(limits.seed);
  try {
    out.d = L.dim() == 0 ? 0 : lie::reductive_rank(L, rng);
  } catch (const std::runtime_error& e) {
    out.failure = e.what();
    return out;
  }
  for (int r = 0; r <= limits.max_restarts && !out.ok; ++r) {
    if (r) ++out.trace.restarts;
    out.trace.dims.clear();
    Attempt a{L, out.d, limits, rng, out.trace};
    const auto h = body(a);
    if (!h) continue;
    auto check = lie::is_split_toral(L, *h, out.d);
    if (!check.ok()) continue;
    out.ok = true;
    out.certificate = std::move(check.certificate);
  }
  if (!out.ok)
    out.failure = "limits exhausted; reached dim " + std::to_string(out.trace.max_dim) + " of " +
                  std::to_string(out.d);
  out.trace.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

SplitCase ladder(std::size_t v, std::size_t s, std::size_t ss, std::size_t i, std::size_t ii) {
  if (ss == 1) return SplitCase::A;
  if (ii == i && (ss == 2 || ss == 3)) return SplitCase::B;
  if (even_nonzero(i) && ii == 0 && ss == 0) return SplitCase::C;
  // [I,I] and S are only compared by dimension: for the long roots of B2^sc
  // they are different 6-dimensional spaces
  if (s == 6 && ii == 6 && ss == 2) return SplitCase::D;
  if (even_nonzero(i) && ii != 0 && ss == 0) return SplitCase::E;
  if (even_nonzero(v) && ss != 0) return SplitCase::F;
  return SplitCase::none;
}

EigenspaceShape analyze_eigenspace(const StructAlgebra& M, const Subspace& V) {
  EigenspaceShape s;
  s.V = V;
  s.S = lie::subalgebra_closure(M, V);
  s.SS = lie::derived(M, s.S);
  s.I = lie::ideal_closure(M, V);
  s.II = lie::derived(M, s.I);
  s.guard = ladder(V.dim(), s.S.dim(), s.SS.dim(), s.I.dim(), s.II.dim());
  return s;
}

std::optional<Vec> find_split_semisimple_elt(const Subspace& V, const SubspaceHandle& M, const StructAlgebra& L,
                                             Rng& rng, SmtsaTrace* trace) {
  const EigenspaceShape s = analyze_eigenspace(M.M, V);
  const auto slot = static_cast<std::size_t>(s.guard);
  if (trace) ++trace->guards[slot];
  std::optional<Vec> h;
  switch (s.guard) {
    case SplitCase::none: return std::nullopt;
    case SplitCase::A: h = s.SS.vec(0); break;
    case SplitCase::B:
    case SplitCase::D:
    case SplitCase::F: h = lie::random_nonzero(s.SS, rng); break;
    case SplitCase::C: h = solve_action(M.M, Subspace::full(M.M.field(), M.M.dim()), s.I); break;
    case SplitCase::E: h = solve_action(M.M, s.I, s.S); break;
  }
  if (!h || is_zero(*h) || !lie::is_split_semisimple(L, M.pull(*h))) return std::nullopt;
  if (trace) ++trace->solved[slot];
  return h;
}

SmtsaResult smtsa3(const StructAlgebra& L, const SearchLimits& limits) {
  if (L.field().p() == 2) throw std::invalid_argument("smtsa3 needs odd characteristic");
  return search(L, limits, [](Attempt& a) { return a.run3(); });
}

SmtsaResult smtsa2(const StructAlgebra& L, const SearchLimits& limits) {
  if (L.field().p() != 2) throw std::invalid_argument("smtsa2 needs characteristic 2");
  return search(L, limits, [](Attempt& a) { return a.run2(); });
}

SmtsaResult solve(const StructAlgebra& L, const SearchLimits& limits) {
  return L.field().p() == 2 ? smtsa2(L, limits) : smtsa3(L, limits);
}

bool verify_result(const StructAlgebra& L, const SmtsaResult& r, std::uint64_t seed) {
  if (!r.ok || !r.certificate) return false;
  Rng rng(seed);
  const std::size_t d = L.dim() == 0 ? 0 : lie::reductive_rank(L, rng);
  return lie::is_split_toral(L, r.certificate->H, d).ok();
}

}  // namespace toral::smtsa
