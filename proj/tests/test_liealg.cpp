#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "toral/chevalley.hpp"
#include "toral/liealg.hpp"

using namespace toral;
using toral::ff::Field;
using toral::ff::Poly;
using toral::ff::Rng;

namespace {

bool zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e.code == 0; });
}

Vec unit(std::size_t n, std::size_t i, const Field& f) {
  Vec v(n);
  v[i] = f.one();
  return v;
}

Subspace span_units(const chev::ChevalleyAlgebra& c, const std::vector<std::size_t>& idx) {
  std::vector<Vec> v;
  for (auto i : idx) v.push_back(c.L.unit(i));
  return Subspace::span(c.L.field(), c.L.dim(), v);
}

// A is semisimple iff it reappears in its own sequence of q-th powers.
bool in_own_frobenius_cycle(const Mat& a) {
  const std::uint64_t q = a.field().q();
  std::vector<Mat> seen = {a};
  for (int step = 0; step < 64; ++step) {
    Mat next = la::mat_pow(seen.back(), q);
    if (next == a) return true;
    if (std::find(seen.begin(), seen.end(), next) != seen.end()) return false;
    seen.push_back(std::move(next));
  }
  return false;
}

// Weights of H_std on L predicted from the root datum: -alpha(h_i) on X_alpha,
// zero on H.
std::vector<std::vector<Elem>> predicted_weights(const chev::ChevalleyAlgebra& c) {
  const Field& f = c.L.field();
  std::vector<std::vector<Elem>> out(c.info.n, std::vector<Elem>(c.info.n, f.zero()));
  for (std::size_t a = 0; a < c.info.roots; ++a) {
    std::vector<Elem> w;
    for (std::size_t i = 0; i < c.info.n; ++i) {
      std::vector<Elem> h(c.info.n, f.zero());
      h[i] = f.one();
      w.push_back(f.neg(chev::root_function(c.info.datum, a, h, f)));
    }
    out.push_back(w);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                        [](Elem a, Elem b) { return a.code < b.code; });
  });
  return out;
}

std::vector<std::vector<Elem>> expanded(const lie::ToralCertificate& cert) {
  std::vector<std::vector<Elem>> out;
  for (const auto& w : cert.weights)
    for (std::size_t i = 0; i < w.multiplicity; ++i) out.push_back(w.values);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                        [](Elem a, Elem b) { return a.code < b.code; });
  });
  return out;
}

}  // namespace

TEST(LieAlg, BracketExamples) {
  const Field f = Field::make(3);
  auto ad = chev::chevalley_algebra("A1:ad", f);
  // [X_a, h] = X_a
  EXPECT_EQ(ad.L.bracket(ad.L.unit(1), ad.L.unit(0)), ad.L.unit(1));
  auto sc = chev::chevalley_algebra("A1:sc", f);
  Vec minus_h(3);
  minus_h[0] = f.from_int(-1);
  EXPECT_EQ(sc.L.bracket(sc.L.unit(1), sc.L.unit(2)), minus_h);

  Rng rng(1);
  auto b3 = chev::chevalley_algebra("B3:sc", f);
  for (int t = 0; t < 20; ++t) {
    const Vec u = lie::random_vector(Subspace::full(f, b3.L.dim()), rng);
    EXPECT_TRUE(zero(b3.L.bracket(u, u)));
  }
  EXPECT_THROW(b3.L.bracket(Vec(3), Vec(3)), std::invalid_argument);
}

TEST(LieAlg, AdjointMatrices) {
  const Field f3 = Field::make(3);
  auto c = chev::chevalley_algebra("A1:sc", f3);
  EXPECT_TRUE(c.L.ad(Vec(3)).is_zero());
  for (std::size_t k = 0; k < 3; ++k) {
    const Mat a = c.L.ad_basis(k);
    Elem tr = f3.zero();
    for (std::size_t i = 0; i < 3; ++i) tr = f3.add(tr, a(i, i));
    EXPECT_EQ(tr, f3.zero());
  }
  // spectrum of ad h_1 in A2^ad: zeros on H, -alpha(h_1) on X_alpha
  auto a2 = chev::chevalley_algebra("A2:ad", f3);
  Poly expect = Poly::monomial(f3, 2, f3.one());
  for (std::size_t r = 0; r < a2.info.roots; ++r) {
    const std::vector<Elem> h = {f3.one(), f3.zero()};
    expect = expect * Poly(f3, {chev::root_function(a2.info.datum, r, h, f3), f3.one()});
  }
  EXPECT_EQ(la::char_poly(a2.L.ad_basis(0)), expect);
}

TEST(LieAlg, Closures) {
  const Field f2 = Field::make(2);
  auto a1 = chev::chevalley_algebra("A1:ad", f2);
  const Subspace zero(f2, 3);
  EXPECT_TRUE(lie::subalgebra_closure(a1.L, zero).is_zero());
  EXPECT_TRUE(lie::ideal_closure(a1.L, zero).is_zero());

  // span of the long root vectors, which have weight zero mod 2
  for (const char* label : {"B2:sc", "C3:sc"}) {
    auto c = chev::chevalley_algebra(label, f2);
    const auto& rs = c.info.datum.system();
    std::vector<std::size_t> longs;
    for (std::size_t a = 0; a < rs.size(); ++a)
      if (rs.is_long(a)) longs.push_back(c.info.x_index(a));
    const Subspace v = span_units(c, longs);
    const Subspace s = lie::subalgebra_closure(c.L, v);
    EXPECT_EQ(s.dim(), 3 * c.info.n) << label;
    EXPECT_TRUE(lie::is_subalgebra(c.L, s));
    if (std::string(label) == "B2:sc") EXPECT_EQ(lie::ideal_closure(c.L, v).dim(), c.L.dim());
  }
}

TEST(LieAlg, CenterAndCentralizers) {
  const Field f2 = Field::make(2), f3 = Field::make(3);
  const StructAlgebra abelian(f3, 4);
  EXPECT_EQ(lie::center(abelian).dim(), 4u);
  EXPECT_TRUE(lie::center(chev::chevalley_algebra("A1:ad", f3).L).is_zero());

  auto c4 = chev::chevalley_algebra("C4:sc", f2);
  Vec y1(c4.L.dim());
  y1[0] = y1[2] = f2.one();
  EXPECT_TRUE(lie::center(c4.L).contains(y1));

  EXPECT_EQ(lie::centralizer(c4.L, Vec(c4.L.dim())).dim(), c4.L.dim());
  auto c3 = chev::chevalley_algebra("C3:sc", f2);
  const Subspace s = lie::centralizer(c3.L, c3.H);
  std::vector<std::size_t> idx = {0, 1, 2};
  const auto& rs = c3.info.datum.system();
  for (std::size_t a = 0; a < rs.size(); ++a)
    if (rs.is_long(a)) idx.push_back(c3.info.x_index(a));
  EXPECT_EQ(s, span_units(c3, idx));
  EXPECT_EQ(s.dim(), 9u);
}

TEST(LieAlg, CentralizerIsClosed) {
  Rng rng(7);
  for (const char* label : {"A2:sc", "B2:ad", "G2"})
    for (const char* q : {"2", "3"}) {
      auto c = chev::chevalley_algebra(label, Field::parse(q));
      lie::SemisimpleExtractor ex(c.L);
      for (int t = 0; t < 4; ++t) {
        auto h = lie::random_semisimple_element(ex, rng);
        ASSERT_TRUE(h);
        const Subspace cen = lie::centralizer(c.L, *h);
        EXPECT_TRUE(cen.contains(*h));
        EXPECT_TRUE(lie::is_subalgebra(c.L, cen));
      }
    }
}

TEST(LieAlg, Normalizer) {
  const Field f5 = Field::make(5);
  auto c = chev::chevalley_algebra("A2:ad", f5);
  const Subspace all = Subspace::full(f5, c.L.dim());
  EXPECT_EQ(lie::normalizer(c.L, all), all);
  EXPECT_EQ(lie::normalizer(c.L, Subspace(f5, c.L.dim())), all);
  EXPECT_EQ(lie::normalizer(c.L, c.H), c.H);
  Rng rng(3);
  auto k = lie::cartan_subalgebra(c.L, rng);
  ASSERT_TRUE(k);
  EXPECT_EQ(k->dim(), 2u);
  EXPECT_EQ(lie::normalizer(c.L, *k), *k);
  EXPECT_TRUE(lie::is_nilpotent(c.L, *k));
}

TEST(LieAlg, Quotients) {
  const Field f2 = Field::make(2);
  auto a1 = chev::chevalley_algebra("A1:sc", f2);
  auto same = lie::quotient_algebra(a1.L, Subspace(f2, 3));
  EXPECT_EQ(same.algebra.constants(), a1.L.constants());
  EXPECT_EQ(same.map.section(), Mat::identity(f2, 3));

  const Subspace z = lie::center(a1.L);
  EXPECT_EQ(z, a1.H);
  auto q = lie::quotient_algebra(a1.L, z);
  EXPECT_EQ(q.algebra.dim(), 2u);
  EXPECT_TRUE(q.algebra.is_abelian());

  auto b2 = chev::chevalley_algebra("B2:ad", f2);
  EXPECT_THROW(lie::quotient_algebra(b2.L, span_units(b2, {2})), std::invalid_argument);
}

TEST(LieAlg, DescentPreservesJacobiAndPullback) {
  Rng rng(11);
  for (const char* label : {"A1:ad", "A2:sc", "A2:ad", "B2:sc", "B2:ad"})
    for (const char* q : {"2", "3"}) {
      auto c = chev::chevalley_algebra(label, Field::parse(q));
      lie::SemisimpleExtractor ex(c.L);
      const auto top = lie::identity_handle(c.L);
      for (int t = 0; t < 3; ++t) {
        auto h = lie::random_semisimple_element(ex, rng);
        ASSERT_TRUE(h);
        const Subspace cen = lie::centralizer(c.L, *h);
        const Subspace k = Subspace::span(c.L.field(), c.L.dim(), {*h});
        const auto down = lie::descend(top, cen, k);
        EXPECT_EQ(down.M.dim(), cen.dim() - 1);
        if (down.M.dim() <= 12) EXPECT_TRUE(down.M.satisfies_jacobi()) << label << " q=" << q;
        // phi([u, w]) = [phi u, phi w] modulo <h>
        for (std::size_t i = 0; i < down.M.dim(); ++i)
          for (std::size_t j = 0; j < down.M.dim(); ++j) {
            Vec lhs = down.pull(down.M.basis_bracket(i, j));
            const Vec rhs = c.L.bracket(down.phi.row(i), down.phi.row(j));
            c.L.field().axpy(lhs, c.L.field().neg(c.L.field().one()), rhs);
            EXPECT_TRUE(k.contains(lhs));
          }
      }
    }
}

TEST(LieAlg, CartanAndReductiveRank) {
  Rng rng(5);
  const StructAlgebra abelian(Field::make(3), 3);
  auto k = lie::cartan_subalgebra(abelian, rng);
  ASSERT_TRUE(k);
  EXPECT_EQ(k->dim(), 3u);

  EXPECT_EQ(lie::reductive_rank(chev::chevalley_algebra("A1:ad", Field::make(2)).L, rng), 1u);
  EXPECT_EQ(lie::reductive_rank(chev::chevalley_algebra("C3:sc", Field::make(2)).L, rng), 3u);
  EXPECT_EQ(lie::reductive_rank(chev::chevalley_algebra("C4:sc", Field::make(2)).L, rng), 4u);
  EXPECT_EQ(lie::reductive_rank(chev::chevalley_algebra("E8", Field::make(3)).L, rng), 8u);
}

TEST(LieAlg, SemisimplePredicates) {
  const Field f5 = Field::make(5), f3 = Field::make(3);
  auto a2 = chev::chevalley_algebra("A2:ad", f5);
  EXPECT_TRUE(lie::is_semisimple_element(a2.L, Vec(a2.L.dim())));
  EXPECT_TRUE(lie::is_semisimple_element(a2.L, a2.L.unit(0)));
  EXPECT_TRUE(lie::is_split_semisimple(a2.L, a2.L.unit(0)));
  EXPECT_FALSE(lie::is_semisimple_element(a2.L, a2.L.unit(2)));

  auto b3 = chev::chevalley_algebra("B3:sc", Field::make(2));
  EXPECT_TRUE(lie::is_split_semisimple(b3.L, b3.L.unit(0)));
  // ad X_a is nilpotent and nonzero
  auto a1 = chev::chevalley_algebra("A1:ad", f3);
  EXPECT_FALSE(lie::is_split_semisimple(a1.L, a1.L.unit(1)));
}

TEST(LieAlg, SemisimpleAgreesWithFrobeniusCycleOracle) {
  Rng rng(17);
  for (const auto& label : rd::all_labels(3))
    for (const char* q : {"2", "3"}) {
      auto c = chev::chevalley_algebra(label, Field::parse(q));
      const Subspace all = Subspace::full(c.L.field(), c.L.dim());
      for (int t = 0; t < 6; ++t) {
        const Vec x = lie::random_vector(all, rng);
        const Mat a = c.L.ad(x);
        const bool ss = lie::is_semisimple_element(c.L, x);
        EXPECT_EQ(ss, in_own_frobenius_cycle(a)) << label;
        if (lie::is_split_semisimple(c.L, x)) EXPECT_TRUE(ss);
      }
    }
}

TEST(LieAlg, ExtractedElementsAreSemisimple) {
  Rng rng(23);
  for (const char* label : {"A2:sc", "G2", "C3:sc", "B3:ad"})
    for (const char* q : {"2", "3", "4"}) {
      auto c = chev::chevalley_algebra(label, Field::parse(q));
      lie::SemisimpleExtractor ex(c.L);
      for (int t = 0; t < 3; ++t) {
        auto h = lie::random_semisimple_element(ex, rng);
        ASSERT_TRUE(h) << label;
        EXPECT_FALSE(zero(*h));
        EXPECT_TRUE(lie::is_semisimple_element(c.L, *h)) << label;
      }
      EXPECT_FALSE(ex.extract(c.L.unit(c.info.x_index(0))));
    }
}

TEST(LieAlg, StandardTorusIsSplitToral) {
  for (const auto& label : rd::all_labels(4))
    for (const char* q : {"2", "3", "4", "9"}) {
      auto c = chev::chevalley_algebra(label, Field::parse(q));
      const auto check = lie::is_split_toral(c.L, c.H, c.info.n);
      ASSERT_TRUE(check.ok()) << label << " q=" << q << ": " << check.detail;
      EXPECT_EQ(expanded(*check.certificate), predicted_weights(c)) << label << " q=" << q;
      const Mat& e = check.certificate->eigenbasis;
      EXPECT_EQ(la::rank(e), c.L.dim());
    }
}

TEST(LieAlg, SplitToralFailures) {
  const Field f3 = Field::make(3);
  auto c = chev::chevalley_algebra("A2:ad", f3);
  EXPECT_EQ(lie::is_split_toral(c.L, span_units(c, {0, 2}), 2).failure, lie::ToralFailure::not_commutative);
  EXPECT_EQ(lie::is_split_toral(c.L, span_units(c, {2}), 1).failure, lie::ToralFailure::not_semisimple);
  EXPECT_EQ(lie::is_split_toral(c.L, span_units(c, {0}), 2).failure, lie::ToralFailure::wrong_dimension);
  EXPECT_TRUE(lie::is_split_toral(c.L, span_units(c, {0}), std::nullopt).ok());

  // X_a + 2 X_-a in A1^ad over GF(3): ad has eigenvalues 0, +-sqrt(2)
  auto a1 = chev::chevalley_algebra("A1:ad", f3);
  EXPECT_EQ(lie::is_split_toral(a1.L, span_units(a1, {1}), 1).failure, lie::ToralFailure::not_semisimple);
  Vec x = a1.L.unit(1);
  x[2] = f3.from_int(2);
  const auto r = lie::is_split_toral(a1.L, Subspace::span(f3, 3, {x}), 1);
  EXPECT_EQ(r.failure, lie::ToralFailure::not_split) << r.detail;
}

TEST(LieAlg, RegularSemisimple) {
  const Field f2 = Field::make(2), f5 = Field::make(5);
  auto a2 = chev::chevalley_algebra("A2:ad", f5);
  EXPECT_FALSE(lie::is_regular_semisimple(a2.L, Vec(a2.L.dim())));
  Vec h(a2.L.dim());
  h[0] = f5.one();
  h[1] = f5.from_int(2);
  EXPECT_TRUE(lie::is_regular_semisimple(a2.L, h));
  // alpha_2(h_1) = 0, so C_L(h_1) contains X_{+-alpha_2}
  EXPECT_FALSE(lie::is_regular_semisimple(a2.L, a2.L.unit(0)));

  auto a1 = chev::chevalley_algebra("A1:sc", f2);
  for (std::uint64_t code = 0; code < 8; ++code) {
    Vec x(3);
    for (std::size_t i = 0; i < 3; ++i) x[i] = Elem{(code >> i) & 1};
    EXPECT_FALSE(lie::is_regular_semisimple(a1.L, x)) << code;
  }
}

TEST(LieAlg, Scramble) {
  const Field f3 = Field::make(3);
  auto c = chev::chevalley_algebra("B2:sc", f3);
  const auto same = lie::change_basis(c.L, Mat::identity(f3, c.L.dim()));
  EXPECT_EQ(same.algebra, c.L);

  Rng rng(29);
  for (const char* label : {"A2:sc", "B2:sc", "G2"})
    for (const char* q : {"2", "3", "4"}) {
      auto cc = chev::chevalley_algebra(label, Field::parse(q));
      const auto s = lie::scramble(cc.L, rng);
      EXPECT_TRUE(s.algebra.satisfies_jacobi());
      EXPECT_EQ(lie::reductive_rank(s.algebra, rng), lie::reductive_rank(cc.L, rng));
      const Subspace image = s.map(cc.H);
      const auto check = lie::is_split_toral(s.algebra, image, cc.info.n);
      ASSERT_TRUE(check.ok()) << check.detail;
      const auto orig = lie::is_split_toral(cc.L, cc.H, cc.info.n);
      // spectra of the mapped torus match once expressed on the same H basis
      std::map<std::size_t, int> dims_a, dims_b;
      for (const auto& w : check.certificate->weights) ++dims_a[w.multiplicity];
      for (const auto& w : orig.certificate->weights) ++dims_b[w.multiplicity];
      EXPECT_EQ(dims_a, dims_b);
      // brackets transport
      for (std::size_t i = 0; i < cc.L.dim(); ++i)
        for (std::size_t j = 0; j < cc.L.dim(); ++j)
          EXPECT_EQ(s.map(cc.L.basis_bracket(i, j)),
                    s.algebra.bracket(s.map(unit(cc.L.dim(), i, cc.L.field())),
                                      s.map(unit(cc.L.dim(), j, cc.L.field()))));
    }
}
