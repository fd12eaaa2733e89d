#include "toral/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <stdexcept>

namespace toral::rd {

namespace {

struct Frac {
  std::int64_t n = 0, d = 1;
  Frac(std::int64_t num = 0, std::int64_t den = 1) : n(num), d(den) { norm(); }
  void norm() {
    if (d < 0) n = -n, d = -d;
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) n /= g, d /= g;
  }
  friend Frac operator-(Frac a, Frac b) { return Frac(a.n * b.d - b.n * a.d, a.d * b.d); }
  friend Frac operator*(Frac a, Frac b) { return Frac(a.n * b.n, a.d * b.d); }
  friend Frac operator/(Frac a, Frac b) { return Frac(a.n * b.d, a.d * b.n); }
  bool zero() const { return n == 0; }
};

IMat cartan_matrix(Type t, int n) {
  IMat c(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto link = [&](int i, int j) { c[i][j] = c[j][i] = -1; };
  switch (t) {
    case Type::A:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case Type::B:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      c[n - 2][n - 1] = -2;  // alpha_n short
      break;
    case Type::C:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      c[n - 1][n - 2] = -2;  // alpha_n long
      break;
    case Type::D:
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case Type::E:
      link(0, 2);
      link(1, 3);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
      break;
    case Type::F:
      link(0, 1);
      link(1, 2);
      link(2, 3);
      c[1][2] = -2;  // alpha_1, alpha_2 long
      break;
    case Type::G:
      link(0, 1);
      c[1][0] = -3;  // alpha_2 long
      break;
  }
  return c;
}

void check_admissible(Type t, int n) {
  bool ok = false;
  switch (t) {
    case Type::A: ok = n >= 1; break;
    case Type::B: ok = n >= 2; break;
    case Type::C: ok = n >= 2; break;
    case Type::D: ok = n >= 4; break;
    case Type::E: ok = n >= 6 && n <= 8; break;
    case Type::F: ok = n == 4; break;
    case Type::G: ok = n == 2; break;
  }
  if (!ok)
    throw std::invalid_argument(std::string("inadmissible root system ") + static_cast<char>(t) +
                                std::to_string(n));
}

Type parse_type(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'A': return Type::A;
    case 'B': return Type::B;
    case 'C': return Type::C;
    case 'D': return Type::D;
    case 'E': return Type::E;
    case 'F': return Type::F;
    case 'G': return Type::G;
  }
  throw std::invalid_argument(std::string("unknown Cartan type '") + c + "'");
}

std::pair<Type, int> parse_name(const std::string& s) {
  if (s.size() < 2) throw std::invalid_argument("bad root system name '" + s + "'");
  const Type t = parse_type(s[0]);
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(s.substr(1), &used);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad root system name '" + s + "'");
  }
  if (used != s.size() - 1) throw std::invalid_argument("bad root system name '" + s + "'");
  return {t, n};
}

// Solves a * b = rhs for the row vector a (b square, invertible, integral
// solution expected).
IVec solve_row(const IMat& b, const IVec& rhs) {
  const std::size_t n = b.size();
  // transpose system: b^T a^T = rhs^T
  std::vector<std::vector<Frac>> m(n, std::vector<Frac>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Frac(b[j][i]);
    m[i][n] = Frac(rhs[i]);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (m[p][c].zero()) ++p;
    std::swap(m[p], m[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c].zero()) continue;
      const Frac f = m[i][c] / m[c][c];
      for (std::size_t j = c; j <= n; ++j) m[i][j] = m[i][j] - f * m[c][j];
    }
  }
  IVec a(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Frac v = m[i][n] / m[i][i];
    if (v.d != 1) throw std::logic_error("non-integral lattice coordinates");
    a[i] = v.n;
  }
  return a;
}

}  // namespace

// ---------------------------------------------------------------- integer lattices

std::int64_t determinant(const IMat& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Frac>> a(n, std::vector<Frac>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Frac(m[i][j]);
  Frac det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].zero()) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = det * Frac(-1);
    }
    det = det * a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c].zero()) continue;
      const Frac f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] = a[i][j] - f * a[c][j];
    }
  }
  return det.n;
}

IMat lattice_basis(IMat rows) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    // Euclid on column c among rows r..end
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || std::abs(rows[i][c]) < std::abs(rows[best][c])))
          best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        const std::int64_t q = rows[i][c] / rows[r][c];
        for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& v : rows[r]) v = -v;
    for (std::size_t i = 0; i < r; ++i) {
      const std::int64_t q = rows[i][c] >= 0 ? rows[i][c] / rows[r][c]
                                             : -((-rows[i][c] + rows[r][c] - 1) / rows[r][c]);
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

std::vector<std::int64_t> smith_diagonal(IMat m) {
  std::vector<std::int64_t> diag;
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // pick the smallest nonzero entry in the remaining block
    std::size_t bi = rows, bj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (bi == rows || std::abs(m[i][j]) < std::abs(m[bi][bj]))) bi = i, bj = j;
    if (bi == rows) break;
    std::swap(m[t], m[bi]);
    for (auto& row : m) std::swap(row[t], row[bj]);
    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      const std::int64_t q = m[i][t] / m[t][t];
      for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
      if (m[i][t]) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      const std::int64_t q = m[t][j] / m[t][t];
      for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
      if (m[t][j]) clean = false;
    }
    if (!clean) continue;
    // divisibility condition
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i)
      for (std::size_t j = t + 1; j < cols; ++j)
        if (m[i][j] % m[t][t] != 0) {
          for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
          divides = false;
          break;
        }
    if (!divides) continue;
    diag.push_back(std::abs(m[t][t]));
    ++t;
  }
  return diag;
}

// ---------------------------------------------------------------- root systems

std::string RootSystem::name() const {
  return std::string(1, static_cast<char>(type)) + std::to_string(rank);
}

int RootSystem::height(std::size_t i) const {
  return static_cast<int>(std::accumulate(roots[i].begin(), roots[i].end(), std::int64_t{0}));
}

int RootSystem::index_of(const IVec& coords) const {
  auto it = index.find(coords);
  return it == index.end() ? -1 : it->second;
}

bool RootSystem::is_long(std::size_t i) const {
  const auto mx = *std::max_element(half_norm.begin(), half_norm.end());
  return half_norm[i] == mx && mx != *std::min_element(half_norm.begin(), half_norm.end());
}

std::int64_t RootSystem::pairing(std::size_t beta, std::size_t alpha) const {
  // <beta, alpha^vee> = sum_i sum_j b_i a_j^vee <alpha_i, alpha_j^vee>
  std::int64_t s = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) s += roots[beta][i] * coroots[alpha][j] * cartan[i][j];
  return s;
}

RootSystem root_system(Type type, int rank) {
  check_admissible(type, rank);
  if (type == Type::C && rank == 2) type = Type::B;
  RootSystem rs;
  rs.type = type;
  rs.rank = rank;
  rs.cartan = cartan_matrix(type, rank);
  const IMat& c = rs.cartan;
  const int n = rank;

  // D_j = (alpha_j, alpha_j)/2 with c[i][j] D_j = c[j][i] D_i
  std::vector<Frac> dj(n);
  std::vector<bool> seen(n, false);
  dj[0] = Frac(1);
  seen[0] = true;
  for (bool progress = true; progress;) {
    progress = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (seen[i] && !seen[j] && c[i][j] != 0) {
          dj[j] = Frac(c[j][i]) * dj[i] / Frac(c[i][j]);
          seen[j] = true;
          progress = true;
        }
  }
  std::int64_t den = 1;
  for (auto& f : dj) den = std::lcm(den, f.d);
  IVec d(n);
  for (int j = 0; j < n; ++j) d[j] = dj[j].n * (den / dj[j].d);
  std::int64_t g = 0;
  for (auto v : d) g = std::gcd(g, v);
  for (auto& v : d) v /= g;

  // reflection closure on positive roots
  std::set<IVec> pos;
  std::vector<IVec> queue;
  for (int i = 0; i < n; ++i) {
    IVec e(n, 0);
    e[i] = 1;
    pos.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    IVec b = queue.back();
    queue.pop_back();
    for (int i = 0; i < n; ++i) {
      std::int64_t p = 0;
      for (int j = 0; j < n; ++j) p += b[j] * c[j][i];
      IVec r = b;
      r[i] -= p;
      bool positive = std::all_of(r.begin(), r.end(), [](std::int64_t v) { return v >= 0; });
      bool nonzero = std::any_of(r.begin(), r.end(), [](std::int64_t v) { return v != 0; });
      if (positive && nonzero && !pos.count(r)) {
        pos.insert(r);
        queue.push_back(r);
      }
    }
  }
  std::vector<IVec> sorted(pos.begin(), pos.end());
  auto ht = [](const IVec& v) { return std::accumulate(v.begin(), v.end(), std::int64_t{0}); };
  std::sort(sorted.begin(), sorted.end(), [&](const IVec& a, const IVec& b) {
    if (ht(a) != ht(b)) return ht(a) < ht(b);
    return a > b;
  });
  rs.roots = sorted;
  for (const auto& v : sorted) {
    IVec neg = v;
    for (auto& x : neg) x = -x;
    rs.roots.push_back(neg);
  }
  for (std::size_t i = 0; i < rs.roots.size(); ++i) rs.index[rs.roots[i]] = static_cast<int>(i);

  for (const auto& r : rs.roots) {
    // (alpha, alpha)/2 = sum_ij r_i r_j c[i][j] d_j / 2
    std::int64_t twice = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) twice += r[i] * r[j] * c[i][j] * d[j];
    const std::int64_t hn = twice / 2;
    rs.half_norm.push_back(hn);
    IVec cv(n);
    for (int j = 0; j < n; ++j) {
      if ((r[j] * d[j]) % hn != 0) throw std::logic_error("non-integral coroot");
      cv[j] = r[j] * d[j] / hn;
    }
    rs.coroots.push_back(cv);
  }
  return rs;
}

RootSystem root_system(const std::string& name) {
  auto [t, n] = parse_name(name);
  return root_system(t, n);
}

// ---------------------------------------------------------------- root data

std::string RootDatum::label() const {
  return iso_.empty() ? sys_.name() : sys_.name() + ":" + iso_;
}

std::int64_t RootDatum::pairing(const IVec& x, const IVec& y) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

std::vector<std::int64_t> fundamental_group(Type type, int rank) {
  check_admissible(type, rank);
  auto diag = smith_diagonal(cartan_matrix(type == Type::C && rank == 2 ? Type::B : type, rank));
  std::vector<std::int64_t> out;
  for (auto v : diag)
    if (v != 1) out.push_back(v);
  return out;
}

RootDatum root_datum(Type type, int rank, const std::string& isogeny_in) {
  RootDatum r;
  r.sys_ = root_system(type, rank);
  type = r.sys_.type;
  const int n = rank;
  const IMat& c = r.sys_.cartan;
  std::string iso;
  for (char ch : isogeny_in) iso += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));

  const bool trivial = fundamental_group(type, rank).empty();
  IMat basis;  // rows in fundamental-weight coordinates
  IMat identity(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) identity[i][i] = 1;

  auto bad = [&]() {
    return std::invalid_argument("invalid isogeny '" + isogeny_in + "' for " + r.sys_.name());
  };
  auto with_generator = [&](IVec g) {
    IMat rows = c;
    rows.push_back(std::move(g));
    return lattice_basis(rows);
  };

  if (trivial) {
    if (!(iso.empty() || iso == "ad" || iso == "sc")) throw bad();
    iso.clear();
    basis = c;
  } else if (iso == "ad") {
    basis = c;
  } else if (iso == "sc") {
    basis = identity;
  } else if (type == Type::A) {
    std::size_t used = 0;
    long k = 0;
    try {
      k = std::stol(iso, &used);
    } catch (const std::logic_error&) {
      throw bad();
    }
    if (used != iso.size() || k < 1 || (n + 1) % k != 0) throw bad();
    if (k == 1) {
      iso = "ad";
      basis = c;
    } else if (k == n + 1) {
      iso = "sc";
      basis = identity;
    } else {
      IVec g(n, 0);
      g[0] = (n + 1) / k;
      basis = with_generator(g);
    }
  } else if (type == Type::D) {
    int which = 0;
    if (iso == "1") which = 1;
    else if (iso == "n-1" || iso == std::to_string(n - 1)) which = n - 1;
    else if (iso == "n" || iso == std::to_string(n)) which = n;
    else throw bad();
    if (which != 1 && n % 2 == 1) throw bad();
    iso = which == 1 ? "1" : which == n ? "n" : "n-1";
    IVec g(n, 0);
    g[which - 1] = 1;
    basis = with_generator(g);
  } else {
    throw bad();
  }
  r.iso_ = iso;
  r.x_basis_ = basis;

  for (std::size_t i = 0; i < r.sys_.size(); ++i) {
    const IVec& cr = r.sys_.roots[i];
    IVec w(n, 0);  // fundamental-weight coordinates of the root
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) w[b] += cr[a] * c[a][b];
    r.root_x_.push_back(solve_row(basis, w));
    const IVec& cv = r.sys_.coroots[i];
    IVec y(n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) y[a] += basis[a][b] * cv[b];
    r.coroot_y_.push_back(y);
  }
  for (std::size_t i = 0; i < r.sys_.size(); ++i)
    if (RootDatum::pairing(r.root_x_[i], r.coroot_y_[i]) != 2)
      throw std::logic_error("root datum pairing check failed");
  return r;
}

RootDatum parse_label(const std::string& label) {
  const auto colon = label.find(':');
  const std::string name = label.substr(0, colon);
  auto [t, n] = parse_name(name);
  const std::string iso = colon == std::string::npos ? "" : label.substr(colon + 1);
  if (iso.empty() && !fundamental_group(t, n).empty())
    throw std::invalid_argument("label '" + label + "' needs an isogeny suffix such as :ad or :sc");
  return root_datum(t, n, iso);
}

std::vector<std::int64_t> x_mod_root_lattice(const RootDatum& r) {
  const int n = r.rank();
  IMat q;
  for (int i = 0; i < n; ++i) q.push_back(r.root_x(static_cast<std::size_t>(i)));
  std::vector<std::int64_t> out;
  for (auto v : smith_diagonal(q))
    if (v != 1) out.push_back(v);
  return out;
}

std::vector<std::string> all_labels(int max_rank) {
  std::vector<std::string> out;
  for (int n = 1; n <= max_rank; ++n) {
    out.push_back("A" + std::to_string(n) + ":ad");
    out.push_back("A" + std::to_string(n) + ":sc");
    for (int k = 2; k <= n; ++k)
      if ((n + 1) % k == 0) out.push_back("A" + std::to_string(n) + ":" + std::to_string(k));
  }
  for (int n = 2; n <= max_rank; ++n) {
    out.push_back("B" + std::to_string(n) + ":ad");
    out.push_back("B" + std::to_string(n) + ":sc");
  }
  for (int n = 3; n <= max_rank; ++n) {
    out.push_back("C" + std::to_string(n) + ":ad");
    out.push_back("C" + std::to_string(n) + ":sc");
  }
  for (int n = 4; n <= max_rank; ++n) {
    const std::string d = "D" + std::to_string(n);
    out.push_back(d + ":ad");
    out.push_back(d + ":sc");
    out.push_back(d + ":1");
    if (n % 2 == 0) {
      out.push_back(d + ":n-1");
      out.push_back(d + ":n");
    }
  }
  if (max_rank >= 2) out.push_back("G2");
  if (max_rank >= 4) out.push_back("F4");
  if (max_rank >= 6) out.insert(out.end(), {"E6:ad", "E6:sc"});
  if (max_rank >= 7) out.insert(out.end(), {"E7:ad", "E7:sc"});
  if (max_rank >= 8) out.push_back("E8");
  return out;
}

}  // namespace toral::rd
