#include "toral/ff.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>
#include <utility>
#include <stdexcept>

namespace toral::ff {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

constexpr unsigned kMaxDigits = 64;

using Digits = std::array<std::uint64_t, 2 * kMaxDigits>;

void decode(std::uint64_t code, std::uint64_t p, unsigned k, std::uint64_t* out) {
  for (unsigned i = 0; i < k; ++i) {
    out[i] = code % p;
    code /= p;
  }
}

std::uint64_t encode(const std::uint64_t* digits, std::uint64_t p, unsigned k) {
  std::uint64_t code = 0;
  for (unsigned i = k; i-- > 0;) code = code * p + digits[i];
  return code;
}

// x^k + sum digits(code) x^i
std::vector<std::uint64_t> monic_from_code(std::uint64_t code, std::uint64_t p, unsigned k) {
  std::vector<std::uint64_t> m(k + 1);
  decode(code, p, k, m.data());
  m[k] = 1;
  return m;
}

Poly poly_from_u64(const Field& f, const std::vector<std::uint64_t>& c) {
  std::vector<Elem> e;
  e.reserve(c.size());
  for (auto v : c) e.push_back(f.from_int(static_cast<std::int64_t>(v % f.p())));
  return Poly(f, std::move(e));
}

bool x_is_primitive(const Poly& m, std::uint64_t q) {
  const Field& f = m.field();
  const Poly one = Poly::constant(f, f.one());
  const Poly x = Poly::x(f);
  for (auto r : prime_factors(q - 1))
    if (powmod(x, (q - 1) / r, m) == one) return false;
  return true;
}

void check_same_field(const Poly& a, const Poly& b) {
  if (!(a.field() == b.field()))
    throw std::invalid_argument("polynomials over different fields");
}

}  // namespace

// ---------------------------------------------------------------- FieldData

std::uint64_t detail::FieldData::generic_add(std::uint64_t a, std::uint64_t b) const {
  if (p == 2) return a ^ b;
  std::uint64_t da[kMaxDigits], db[kMaxDigits];
  decode(a, p, k, da);
  decode(b, p, k, db);
  for (unsigned i = 0; i < k; ++i) {
    da[i] += db[i];
    if (da[i] >= p) da[i] -= p;
  }
  return encode(da, p, k);
}

std::uint64_t detail::FieldData::generic_neg(std::uint64_t a) const {
  if (p == 2) return a;
  std::uint64_t da[kMaxDigits];
  decode(a, p, k, da);
  for (unsigned i = 0; i < k; ++i) da[i] = da[i] ? p - da[i] : 0;
  return encode(da, p, k);
}

std::uint64_t detail::FieldData::generic_mul(std::uint64_t a, std::uint64_t b) const {
  if (k == 1) return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  if (p == 2) {
    unsigned __int128 prod = 0;
    for (unsigned i = 0; i < k; ++i)
      if ((b >> i) & 1u) prod ^= static_cast<unsigned __int128>(a) << i;
    unsigned __int128 mod = 0;
    for (unsigned i = 0; i <= k; ++i)
      if (modulus[i]) mod |= static_cast<unsigned __int128>(1) << i;
    for (int bit = 2 * static_cast<int>(k) - 2; bit >= static_cast<int>(k); --bit)
      if ((prod >> bit) & 1u) prod ^= mod << (bit - static_cast<int>(k));
    return static_cast<std::uint64_t>(prod);
  }
  std::uint64_t da[kMaxDigits], db[kMaxDigits];
  Digits prod{};
  decode(a, p, k, da);
  decode(b, p, k, db);
  for (unsigned i = 0; i < k; ++i) {
    if (!da[i]) continue;
    for (unsigned j = 0; j < k; ++j)
      prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  }
  for (unsigned deg = 2 * k - 2; deg >= k; --deg) {
    const std::uint64_t c = prod[deg];
    if (!c) continue;
    prod[deg] = 0;
    // subtract c * x^(deg-k) * modulus (monic)
    for (unsigned i = 0; i < k; ++i)
      prod[deg - k + i] = (prod[deg - k + i] + (p - modulus[i]) % p * c) % p;
  }
  return encode(prod.data(), p, k);
}

// ---------------------------------------------------------------- Field

Field::Field() {
  static const Field gf2 = make(2, 1);
  d_ = gf2.d_;
}

Field Field::make(std::uint64_t p, unsigned k,
                  std::optional<std::vector<std::uint64_t>> defining_poly) {
  if (!is_prime(p) || p >= (std::uint64_t{1} << 32))
    throw std::invalid_argument("field characteristic must be a prime below 2^32");
  if (k < 1) throw std::invalid_argument("extension degree must be at least 1");
  if (k > kMaxDigits) throw std::invalid_argument("extension degree too large");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (q > std::numeric_limits<std::uint64_t>::max() / p)
      throw std::invalid_argument("field order must be below 2^64");
    q *= p;
  }
  if (q == std::numeric_limits<std::uint64_t>::max())
    throw std::invalid_argument("field order must be below 2^64");

  auto d = std::make_shared<detail::FieldData>();
  d->p = p;
  d->k = k;
  d->q = q;

  if (defining_poly) {
    auto m = *defining_poly;
    for (auto& c : m) c %= p;
    while (!m.empty() && m.back() == 0) m.pop_back();
    if (m.size() != k + 1 || m.back() != 1)
      throw std::invalid_argument("defining polynomial must be monic of degree k");
    if (k > 1) {
      const Field fp = make(p, 1);
      if (!is_irreducible(poly_from_u64(fp, m)))
        throw std::invalid_argument("defining polynomial is reducible");
    }
    d->modulus = std::move(m);
  } else if (k == 1) {
    d->modulus = {0, 1};
  } else {
    const Field fp = make(p, 1);
    std::uint64_t lower = 1;
    for (unsigned i = 0; i < k; ++i) lower *= p;
    bool found = false;
    for (std::uint64_t code = 0; code < lower && !found; ++code) {
      auto m = monic_from_code(code, p, k);
      if (m[0] == 0) continue;
      Poly f = poly_from_u64(fp, m);
      if (!is_irreducible(f)) continue;
      if (q <= kTableLimit && !x_is_primitive(f, q)) continue;
      d->modulus = std::move(m);
      found = true;
    }
    if (!found) throw std::logic_error("no irreducible polynomial found");
  }

  if (p == 2 && q <= kTableLimit) {
    d->arith = detail::Arith::BinaryTable;
  } else if (k == 1) {
    d->arith = detail::Arith::Prime;
  } else if (q <= kTableLimit) {
    d->arith = detail::Arith::OddTable;
  } else {
    d->arith = detail::Arith::Generic;
  }

  if (d->arith == detail::Arith::BinaryTable || d->arith == detail::Arith::OddTable) {
    const std::uint64_t n = q - 1;
    // find a generator (x for default polynomials)
    std::uint64_t g = 0;
    auto order_is_full = [&](std::uint64_t cand) {
      for (auto r : prime_factors(n)) {
        std::uint64_t e = n / r, acc = 1, b = cand;
        while (e) {
          if (e & 1) acc = d->generic_mul(acc, b);
          b = d->generic_mul(b, b);
          e >>= 1;
        }
        if (acc == 1) return false;
      }
      return true;
    };
    if (n == 1) {
      g = 1;
    } else {
      for (std::uint64_t cand = (k > 1 ? p : 2); cand < q; ++cand)
        if (order_is_full(cand)) {
          g = cand;
          break;
        }
      if (g == 0)
        for (std::uint64_t cand = 2; cand < q; ++cand)
          if (order_is_full(cand)) {
            g = cand;
            break;
          }
    }
    d->exp.resize(2 * n);
    d->log.assign(q, 0);
    std::uint64_t acc = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      d->exp[i] = static_cast<std::uint32_t>(acc);
      d->exp[i + n] = static_cast<std::uint32_t>(acc);
      d->log[acc] = static_cast<std::uint32_t>(i);
      acc = d->generic_mul(acc, g);
    }
    if (d->arith == detail::Arith::OddTable) {
      d->log_minus_one = static_cast<std::uint32_t>(n / 2);
      d->zech.resize(n);
      for (std::uint64_t t = 0; t < n; ++t) {
        const std::uint64_t s = d->generic_add(1, d->exp[t]);
        d->zech[t] = s == 0 ? -1 : static_cast<std::int32_t>(d->log[s]);
      }
    }
  }
  return Field(std::move(d));
}

Field Field::parse(const std::string& text) {
  const auto caret = text.find('^');
  try {
    std::size_t used = 0;
    const std::uint64_t p = std::stoull(text.substr(0, caret), &used);
    if (used != (caret == std::string::npos ? text.size() : caret))
      throw std::invalid_argument("bad field string");
    unsigned k = 1;
    if (caret == std::string::npos && p > 1 && !is_prime(p)) {
      // a bare prime power such as "4" or "729"
      const auto fs = prime_factors(p);
      if (fs.size() == 1) {
        std::uint64_t base = fs[0], rest = p;
        unsigned e = 0;
        while (rest > 1) rest /= base, ++e;
        return make(base, e);
      }
    }
    if (caret != std::string::npos) {
      const std::string rest = text.substr(caret + 1);
      k = static_cast<unsigned>(std::stoul(rest, &used));
      if (used != rest.size()) throw std::invalid_argument("bad field string");
    }
    return make(p, k);
  } catch (const std::logic_error& e) {
    throw std::invalid_argument("bad field string '" + text + "': " + e.what());
  }
}

std::string Field::name() const {
  if (k() == 1) return "GF(" + std::to_string(p()) + ")";
  return "GF(" + std::to_string(p()) + "^" + std::to_string(k()) + ")";
}

Elem Field::from_int(std::int64_t v) const {
  const auto p = static_cast<std::int64_t>(d_->p);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return {static_cast<std::uint64_t>(r)};
}

Elem Field::from_coeffs(std::span<const std::uint64_t> coeffs) const {
  if (coeffs.size() > d_->k) throw std::invalid_argument("too many coefficients for field element");
  std::uint64_t digits[kMaxDigits] = {};
  for (std::size_t i = 0; i < coeffs.size(); ++i) digits[i] = coeffs[i] % d_->p;
  return {encode(digits, d_->p, d_->k)};
}

std::vector<std::uint64_t> Field::coeffs(Elem a) const {
  std::vector<std::uint64_t> out(d_->k);
  decode(a.code, d_->p, d_->k, out.data());
  return out;
}

Elem Field::random(Rng& rng) const {
  std::uniform_int_distribution<std::uint64_t> dist(0, d_->q - 1);
  return {dist(rng)};
}

Elem Field::inv(Elem a) const {
  if (a.code == 0) throw std::domain_error("inverse of zero");
  const auto& d = *d_;
  switch (d.arith) {
    case detail::Arith::BinaryTable:
    case detail::Arith::OddTable:
      return {d.exp[(d.q - 1) - d.log[a.code]]};
    case detail::Arith::Prime:
      return pow(a, d.p - 2);
    default:
      return pow(a, d.q - 2);
  }
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem acc = one();
  while (e) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

void Field::axpy(std::span<Elem> y, Elem a, std::span<const Elem> x) const {
  if (a.code == 0) return;
  const auto& d = *d_;
  const std::size_t n = std::min(y.size(), x.size());
  switch (d.arith) {
    case detail::Arith::BinaryTable: {
      const std::uint32_t la = d.log[a.code];
      for (std::size_t i = 0; i < n; ++i)
        if (x[i].code) y[i].code ^= d.exp[la + d.log[x[i].code]];
      return;
    }
    case detail::Arith::Prime: {
      const std::uint64_t p = d.p;
      if (p < (std::uint64_t{1} << 31)) {
        for (std::size_t i = 0; i < n; ++i)
          if (x[i].code) y[i].code = (y[i].code + a.code * x[i].code) % p;
      } else {
        for (std::size_t i = 0; i < n; ++i) y[i] = add(y[i], mul(a, x[i]));
      }
      return;
    }
    case detail::Arith::OddTable: {
      const std::uint32_t la = d.log[a.code];
      for (std::size_t i = 0; i < n; ++i)
        if (x[i].code) y[i] = add(y[i], Elem{d.exp[la + d.log[x[i].code]]});
      return;
    }
    default:
      for (std::size_t i = 0; i < n; ++i)
        if (x[i].code) y[i] = add(y[i], mul(a, x[i]));
  }
}

void Field::scale(std::span<Elem> y, Elem a) const {
  for (auto& v : y) v = mul(v, a);
}

// ---------------------------------------------------------------- Poly

Poly::Poly(Field f, std::vector<Elem> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
  normalize();
}

void Poly::normalize() {
  while (!c_.empty() && c_.back().code == 0) c_.pop_back();
}

Poly Poly::monomial(const Field& f, std::size_t degree, Elem c) {
  std::vector<Elem> v(degree + 1, f.zero());
  v[degree] = c;
  return Poly(f, std::move(v));
}

Poly Poly::from_ints(const Field& f, std::initializer_list<std::int64_t> coeffs) {
  std::vector<Elem> v;
  for (auto c : coeffs) v.push_back(f.from_int(c));
  return Poly(f, std::move(v));
}

Elem Poly::eval(Elem x) const {
  Elem acc = f_.zero();
  for (std::size_t i = c_.size(); i-- > 0;) acc = f_.add(f_.mul(acc, x), c_[i]);
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  const Elem li = f_.inv(lead());
  std::vector<Elem> v = c_;
  f_.scale(v, li);
  return Poly(f_, std::move(v));
}

Poly Poly::derivative() const {
  std::vector<Elem> v;
  for (std::size_t i = 1; i < c_.size(); ++i)
    v.push_back(f_.mul(f_.from_int(static_cast<std::int64_t>(i % f_.p())), c_[i]));
  return Poly(f_, std::move(v));
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].code == 0) continue;
    if (!first) os << " + ";
    first = false;
    std::string coef;
    if (f_.k() == 1) {
      coef = std::to_string(c_[i].code);
    } else {
      auto cs = f_.coeffs(c_[i]);
      coef = "(";
      for (std::size_t j = 0; j < cs.size(); ++j) coef += (j ? "," : "") + std::to_string(cs[j]);
      coef += ")";
    }
    if (i == 0) {
      os << coef;
    } else {
      if (c_[i] != f_.one()) os << coef << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

Poly operator+(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  const Field& f = a.f_;
  std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()), f.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] = f.add(v[i], b.c_[i]);
  return Poly(f, std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  const Field& f = a.f_;
  std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()), f.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] = f.sub(v[i], b.c_[i]);
  return Poly(f, std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  const Field& f = a.f_;
  if (a.is_zero() || b.is_zero()) return Poly(f);
  std::vector<Elem> v(a.c_.size() + b.c_.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    f.axpy(std::span<Elem>(v).subspan(i, b.c_.size()), a.c_[i], b.c_);
  return Poly(f, std::move(v));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const Field& f = a.field();
  if (a.degree() < b.degree()) return {Poly(f), a};
  std::vector<Elem> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<Elem> qv(r.size() - db, f.zero());
  const Elem li = f.inv(b.lead());
  for (std::size_t i = r.size(); i-- > db;) {
    if (r[i].code == 0) continue;
    const Elem c = f.mul(r[i], li);
    qv[i - db] = c;
    f.axpy(std::span<Elem>(r).subspan(i - db, db + 1), f.neg(c), bc);
  }
  r.resize(db);
  return {Poly(f, std::move(qv)), Poly(f, std::move(r))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

Poly poly_gcd(const Poly& f, const Poly& g) {
  check_same_field(f, g);
  Poly a = f, b = g;
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Bezout poly_xgcd(const Poly& f, const Poly& h) {
  check_same_field(f, h);
  const Field& F = f.field();
  Poly r0 = f, r1 = h;
  Poly s0 = Poly::constant(F, F.one()), s1(F);
  Poly t0(F), t1 = Poly::constant(F, F.one());
  while (!r1.is_zero()) {
    auto [quo, rem] = divmod(r0, r1);
    r0 = std::exchange(r1, rem);
    s0 = std::exchange(s1, s0 - quo * s1);
    t0 = std::exchange(t1, t0 - quo * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Poly norm = Poly::constant(F, F.inv(r0.lead()));
  return {r0 * norm, s0 * norm, t0 * norm};
}

Poly poly_lcm(const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return Poly(f.field());
  return (f / poly_gcd(f, g) * g).monic();
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) {
  const Field& f = base.field();
  Poly acc = Poly::constant(f, f.one()) % m;
  Poly b = base % m;
  while (e) {
    if (e & 1) acc = acc * b % m;
    e >>= 1;
    if (e) b = b * b % m;
  }
  return acc;
}

Poly xq_mod(const Poly& m) {
  if (m.degree() < 1) throw std::invalid_argument("xq_mod needs a non-constant modulus");
  return powmod(Poly::x(m.field()), m.field().q(), m);
}

bool is_squarefree(const Poly& f) {
  if (f.degree() < 1) return true;
  return poly_gcd(f, f.derivative()).degree() == 0;
}

bool divides_xq_minus_x(const Poly& f) {
  if (f.is_zero()) return false;
  if (f.degree() < 1) return true;
  return (xq_mod(f) - Poly::x(f.field()) % f).is_zero();
}

namespace {

// Splits a monic squarefree product of distinct linear factors.
void split_linear(const Poly& g, Rng& rng, std::vector<Elem>& out) {
  const Field& f = g.field();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(f.neg(g.monic().coeff(0)));
    return;
  }
  const Poly one = Poly::constant(f, f.one());
  for (;;) {
    Poly h(f);
    if (f.p() == 2) {
      // trace of a*x: sum_{i<log2 q} (a x)^(2^i) mod g
      Poly y = Poly::monomial(f, 1, f.random(rng)) % g;
      Poly t = y;
      unsigned bits = 0;
      for (std::uint64_t q = f.q(); q > 1; q >>= 1) ++bits;
      for (unsigned i = 1; i < bits; ++i) {
        y = y * y % g;
        t = t + y;
      }
      h = poly_gcd(g, t);
    } else {
      const Poly shift = Poly(f, {f.random(rng), f.one()});
      h = poly_gcd(g, powmod(shift, (f.q() - 1) / 2, g) - one);
    }
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split_linear(h, rng, out);
      split_linear(g / h, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Elem> roots_in_field(const Poly& m) {
  if (m.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  const Field& f = m.field();
  std::vector<Elem> distinct;
  if (m.degree() < 1) return {};
  if (f.q() <= 4096) {
    for (std::uint64_t c = 0; c < f.q(); ++c)
      if (m.eval(f.nth(c)).code == 0) distinct.push_back(f.nth(c));
  } else {
    const Poly g = poly_gcd(m, xq_mod(m) - Poly::x(f));
    Rng rng(0x5eed0f00dULL ^ static_cast<std::uint64_t>(m.degree()));
    split_linear(g, rng, distinct);
    std::sort(distinct.begin(), distinct.end());
  }
  std::vector<Elem> out;
  for (Elem r : distinct) {
    const Poly lin(f, {f.neg(r), f.one()});
    Poly rest = m;
    for (;;) {
      auto [quo, rem] = divmod(rest, lin);
      if (!rem.is_zero()) break;
      out.push_back(r);
      rest = std::move(quo);
    }
  }
  return out;
}

bool is_irreducible(const Poly& f) {
  const int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  const Field& F = f.field();
  const Poly x = Poly::x(F);
  const Poly fm = f.monic();
  // x^(q^j) mod f for j = 1..n
  std::vector<Poly> frob;
  Poly cur = x % fm;
  for (int j = 1; j <= n; ++j) {
    cur = powmod(cur, F.q(), fm);
    frob.push_back(cur);
  }
  if (!(frob[n - 1] - x % fm).is_zero()) return false;
  for (auto r : prime_factors(static_cast<std::uint64_t>(n))) {
    const int j = n / static_cast<int>(r);
    if (poly_gcd(fm, frob[j - 1] - x).degree() != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Embedding

Embedding::Embedding(const Field& small, const Field& big)
    : small_(small), big_(big), image_of_x_{0} {
  if (small.p() != big.p() || big.k() % small.k() != 0)
    throw std::invalid_argument("no embedding between these fields");
  std::vector<Elem> coeffs;
  for (auto c : small.defining_poly()) coeffs.push_back(big.from_int(static_cast<std::int64_t>(c)));
  const auto roots = roots_in_field(Poly(big, coeffs));
  if (roots.empty()) throw std::logic_error("defining polynomial has no root in the larger field");
  image_of_x_ = roots.front();
}

Elem Embedding::operator()(Elem a) const {
  const auto cs = small_.coeffs(a);
  Elem acc = big_.zero();
  for (std::size_t i = cs.size(); i-- > 0;)
    acc = big_.add(big_.mul(acc, image_of_x_), big_.from_int(static_cast<std::int64_t>(cs[i])));
  return acc;
}

}  // namespace toral::ff
