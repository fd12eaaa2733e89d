#include <gtest/gtest.h>

#include "toral/linalg.hpp"
#include "toral/verify.hpp"

using namespace toral;
using toral::ff::Field;
using toral::ff::Rng;
using verify::EigenspaceRow;

namespace {

bool same_row(const EigenspaceRow& a, const EigenspaceRow& b) {
  return a.label == b.label && a.dim == b.dim && a.mult == b.mult && a.zero_weight == b.zero_weight && a.S == b.S &&
         a.SS == b.SS && a.SS_H == b.SS_H && a.I == b.I && a.II == b.II && a.guard == b.guard;
}

// rank mod 2 of the coroots of the selected roots, as vectors in Y
std::size_t coroot_rank(const rd::RootDatum& r, bool (*keep)(const rd::RootDatum&, std::size_t)) {
  const Field f = Field::make(2);
  std::vector<Vec> rows;
  for (std::size_t a = 0; a < r.system().size(); ++a) {
    if (!keep(r, a)) continue;
    Vec v(static_cast<std::size_t>(r.rank()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.from_int(r.coroot_y(a)[i]);
    rows.push_back(v);
  }
  return Subspace::span(f, static_cast<std::size_t>(r.rank()), rows).dim();
}

bool any_root(const rd::RootDatum&, std::size_t) { return true; }
bool short_root(const rd::RootDatum& r, std::size_t a) { return !r.system().is_long(a); }

std::size_t short_count(const rd::RootDatum& r) {
  std::size_t k = 0;
  for (std::size_t a = 0; a < r.system().size(); ++a) k += short_root(r, a);
  return k;
}

std::size_t dim_of(const std::string& cell, std::size_t whole, std::size_t ideal) {
  if (cell == "L") return whole;
  if (cell == "L-1") return whole - 1;
  if (cell == "I") return ideal;
  return std::stoul(cell);
}

}  // namespace

TEST(EigenspaceTable, RowsOutsideTypeCMatch) {
  for (const char* q : {"2", "4"})
    for (const auto& label : verify::table_suite()) {
      if (label[0] == 'C') continue;
      for (const auto& c : verify::compare_rows(label, Field::parse(q))) {
        EXPECT_TRUE(c.ok()) << label << " q=" << q << " " << verify::to_json(c).dump();
        if (label == "A1:ad") {
          EXPECT_EQ(c.known, std::vector<std::string>{"[I,I]"});
        } else {
          EXPECT_TRUE(c.known.empty()) << label;
          EXPECT_TRUE(c.case_checked) << label;
        }
      }
    }
}

TEST(EigenspaceTable, TypeCRowsFollowRootCombinatorics) {
  for (const char* label : {"C3:ad", "C3:sc", "C4:ad", "C4:sc"}) {
    const auto r = rd::parse_label(label);
    const std::size_t n = static_cast<std::size_t>(r.rank()), whole = n + r.system().size();
    const bool sc = r.isogeny() == "sc";
    const auto rows = verify::compute_rows(label, Field::make(2));
    ASSERT_EQ(rows.size(), 2u) << label;
    const auto& longs = rows[0].dim == 2 * n ? rows[0] : rows[1];
    const auto& shorts = rows[0].dim == 2 * n ? rows[1] : rows[0];

    // the long root vectors reach every root, but only the coroot lattice of H
    const std::size_t all = r.system().size() + coroot_rank(r, any_root);
    EXPECT_EQ(longs.zero_weight, sc);
    EXPECT_EQ(dim_of(longs.I, whole, 0), all) << label;
    EXPECT_EQ(all, sc ? whole : whole - 1) << label;
    // N = +-2 on short + short = long, so long root vectors leave the derived algebra
    const std::size_t derived = short_count(r) + coroot_rank(r, any_root);
    EXPECT_EQ(dim_of(longs.II, whole, all), derived) << label;
    const std::size_t short_ideal = short_count(r) + coroot_rank(r, short_root);
    EXPECT_EQ(dim_of(shorts.I, whole, 0), short_ideal) << label;
    EXPECT_EQ(shorts.II, "I") << label;
    EXPECT_EQ(longs.guard, smtsa::SplitCase::F);
    EXPECT_EQ(shorts.guard, smtsa::SplitCase::A);
  }
}

TEST(EigenspaceTable, TypeCSubalgebraColumnsMatchReference) {
  for (const char* label : {"C3:ad", "C3:sc", "C4:ad", "C4:sc"})
    for (const auto& c : verify::compare_rows(label, Field::make(2))) {
      ASSERT_TRUE(c.computed);
      EXPECT_EQ(c.computed->S, c.expected.S) << label;
      EXPECT_EQ(c.computed->SS, c.expected.SS) << label;
      EXPECT_EQ(c.computed->SS_H, c.expected.SS_H) << label;
      EXPECT_EQ(c.computed->guard, c.expected.guard) << label;
    }
}

TEST(EigenspaceTable, RowsDoNotDependOnTheField) {
  for (const auto& label : verify::table_suite()) {
    const auto a = verify::compute_rows(label, Field::make(2));
    const auto b = verify::compute_rows(label, Field::parse("4"));
    ASSERT_EQ(a.size(), b.size()) << label;
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(same_row(a[i], b[i])) << label;
  }
}

TEST(EigenspaceTable, Coverage) {
  EXPECT_TRUE(verify::in_eigenspace_table("B7:sc"));
  EXPECT_TRUE(verify::in_eigenspace_table("C6:ad"));
  EXPECT_FALSE(verify::in_eigenspace_table("A2:sc"));
  EXPECT_FALSE(verify::in_eigenspace_table("E6:sc"));
  EXPECT_FALSE(verify::in_eigenspace_table("nonsense"));
  EXPECT_THROW(verify::reference_rows("A2:ad"), std::invalid_argument);
  EXPECT_THROW(verify::compute_rows("G2", Field::make(3)), std::invalid_argument);
  const auto rows = verify::reference_rows("B6:ad");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].mult, 6u);
  EXPECT_EQ(rows[1].mult, 15u);
}

TEST(Regularity, ExhaustiveAndStructuralAgreeOnA1) {
  const Field f = Field::make(2);
  const auto r = verify::regular_semisimple_absence("A1:sc", f);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.elements, 8u);
  EXPECT_EQ(r.regular_found, 0u);
  EXPECT_GT(r.zero_root_dim, 0u);
  EXPECT_GT(r.centralizer_dim, r.rank);
  EXPECT_TRUE(r.holds);

  // no element has a centralizer as small as the rank
  const auto c = chev::chevalley_algebra("A1:sc", f);
  for (std::uint32_t bits = 0; bits < 8; ++bits) {
    Vec x(3);
    for (std::size_t i = 0; i < 3; ++i) x[i] = (bits >> i) & 1 ? f.one() : f.zero();
    EXPECT_GE(lie::centralizer(c.L, x).dim(), 2u);
  }
}

TEST(Regularity, StructuralCases) {
  for (const char* label : {"B2:sc", "C3:sc", "C4:sc"})
    for (const char* q : {"2", "4"}) {
      const auto r = verify::regular_semisimple_absence(label, Field::parse(q));
      EXPECT_TRUE(r.holds) << label << " q=" << q;
      // the long root vectors vanish on the standard torus
      EXPECT_EQ(r.zero_root_dim, 2 * r.rank);
      EXPECT_EQ(r.centralizer_dim, 3 * r.rank);
    }
  EXPECT_THROW(verify::regular_semisimple_absence("B3:sc", Field::make(2)), std::invalid_argument);
  EXPECT_THROW(verify::regular_semisimple_absence("C3:sc", Field::make(3)), std::invalid_argument);
}

TEST(Counterexample, RecordHolds) {
  const auto r = verify::c4_counterexample();
  EXPECT_TRUE(r.y1_central);
  EXPECT_TRUE(r.split_toral);
  EXPECT_EQ(r.eigenspace_dims, (std::vector<std::size_t>{8, 8, 8, 12}));
  EXPECT_EQ(r.centralizer_dim, 4u);
  EXPECT_TRUE(r.H_inside_centralizer);
  EXPECT_EQ(r.candidates, 8u);
  EXPECT_EQ(r.split_candidates, 0u);
  EXPECT_TRUE(r.y_in_centralizer);
  EXPECT_TRUE(r.char_poly_matches) << r.y_char_poly;
  EXPECT_TRUE(r.holds);
}

TEST(Counterexample, SolverEscapesTheTrap) {
  const auto c = chev::chevalley_algebra("C4:sc", Field::make(2));
  for (std::uint64_t s = 1; s <= 3; ++s) {
    Rng rng(s);
    const auto L = lie::scramble(c.L, rng).algebra;
    smtsa::SearchLimits l;
    l.seed = s;
    const auto r = smtsa::smtsa2(L, l);
    ASSERT_TRUE(r.ok) << r.failure;
    EXPECT_EQ(r.d, 4u);
    EXPECT_TRUE(smtsa::verify_result(L, r));
  }
}

TEST(CartanRank, Cases) {
  const std::pair<const char*, const char*> cases[] = {{"A2:ad", "3"}, {"B2:sc", "2"}, {"C3:sc", "2"}, {"C3:sc", "4"}};
  for (const auto& [label, q] : cases) {
    const auto r = verify::cartan_rank_check(label, Field::parse(q));
    EXPECT_TRUE(r.holds) << label << " q=" << q;
    EXPECT_EQ(r.dims, std::vector<std::size_t>(5, r.rank));
  }
  EXPECT_EQ(verify::cartan_rank_check("A2:ad", Field::make(3)).standard_centralizer_dim, 2u);
  EXPECT_EQ(verify::cartan_rank_check("B2:sc", Field::make(2), 1).standard_centralizer_dim, 6u);
}

TEST(Claims, Shape) {
  const auto claims = verify::run_claims();
  ASSERT_EQ(claims.size(), 4u);
  const char* ids[] = {"eigenspace-table", "no-regular-semisimple", "c4-counterexample", "cartan-rank"};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(claims[i].id, ids[i]);
    EXPECT_FALSE(claims[i].summary.empty());
    const auto text = claims[i].data.dump();
    EXPECT_EQ(nlohmann::json::parse(text), claims[i].data);
  }
  std::size_t rows = 0;
  for (const auto& label : verify::table_suite()) rows += verify::reference_rows(label).size();
  ASSERT_TRUE(claims[0].data.is_array());
  EXPECT_GE(claims[0].data.size(), rows);
  for (const auto& row : claims[0].data) {
    for (const char* key : {"expected", "computed", "mismatches", "known", "case_checked", "ok"})
      EXPECT_TRUE(row.contains(key)) << key;
  }
  EXPECT_TRUE(claims[1].pass);
  EXPECT_TRUE(claims[2].pass);
  EXPECT_TRUE(claims[3].pass);
  EXPECT_EQ(claims[2].data["eigenspace_dims"], nlohmann::json({8, 8, 8, 12}));
}
