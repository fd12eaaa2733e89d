#pragma once

// Finite fields GF(p^k) and univariate polynomials over them.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace toral::ff {

/// Element of GF(p^k). The code packs the coefficient vector (c_0, ..., c_{k-1})
/// over GF(p) as the base-p integer sum c_i p^i, so equal elements are bit-identical.
struct Elem {
  std::uint64_t code = 0;
  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

using Vec = std::vector<Elem>;
using Rng = std::mt19937_64;

namespace detail {

enum class Arith : std::uint8_t { Prime, BinaryTable, OddTable, Generic };

struct FieldData {
  std::uint64_t p = 2;
  unsigned k = 1;
  std::uint64_t q = 2;
  std::vector<std::uint64_t> modulus;  // monic, ascending, length k + 1
  Arith arith = Arith::Prime;
  // log/exp tables (table arithmetic only); exp has 2(q-1) entries so that
  // exp[log a + log b] needs no reduction.
  std::vector<std::uint32_t> exp;
  std::vector<std::uint32_t> log;
  std::vector<std::int32_t> zech;  // log(1 + g^t), -1 when 1 + g^t = 0
  std::uint32_t log_minus_one = 0;

  std::uint64_t generic_add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t generic_neg(std::uint64_t a) const;
  std::uint64_t generic_mul(std::uint64_t a, std::uint64_t b) const;
};

}  // namespace detail

/// Largest field order served by log/exp tables.
inline constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

/// GF(p^k) with a fixed defining polynomial. Cheap to copy; immutable.
class Field {
 public:
  /// Builds GF(p^k). Without a defining polynomial the least monic
  /// irreducible one (ordered by the base-p code of its lower coefficients)
  /// is used; below kTableLimit it is additionally required to be primitive.
  /// Throws std::invalid_argument on non-prime p, k < 1, q >= 2^64 or a
  /// defining polynomial that is not monic irreducible of degree k.
  static Field make(std::uint64_t p, unsigned k = 1,
                    std::optional<std::vector<std::uint64_t>> defining_poly = std::nullopt);

  /// Parses "2", "3^6", "2^10".
  static Field parse(const std::string& text);

  Field();  // GF(2)

  std::uint64_t p() const { return d_->p; }
  unsigned k() const { return d_->k; }
  std::uint64_t q() const { return d_->q; }
  const std::vector<std::uint64_t>& defining_poly() const { return d_->modulus; }
  std::string name() const;

  Elem zero() const { return {0}; }
  Elem one() const { return {1}; }
  Elem from_int(std::int64_t v) const;
  Elem from_coeffs(std::span<const std::uint64_t> coeffs) const;
  std::vector<std::uint64_t> coeffs(Elem a) const;
  Elem random(Rng& rng) const;
  /// The element whose code is n (0 <= n < q); enumerates the field.
  Elem nth(std::uint64_t n) const { return {n}; }

  Elem add(Elem a, Elem b) const {
    const auto& d = *d_;
    switch (d.arith) {
      case detail::Arith::BinaryTable:
        return {a.code ^ b.code};
      case detail::Arith::Prime: {
        std::uint64_t s = a.code + b.code;
        return {s >= d.p ? s - d.p : s};
      }
      case detail::Arith::OddTable: {
        if (a.code == 0) return b;
        if (b.code == 0) return a;
        const std::uint32_t n = static_cast<std::uint32_t>(d.q - 1);
        const std::uint32_t la = d.log[a.code], lb = d.log[b.code];
        const std::uint32_t t = lb >= la ? lb - la : lb + n - la;
        const std::int32_t z = d.zech[t];
        if (z < 0) return {0};
        return {d.exp[la + static_cast<std::uint32_t>(z)]};
      }
      default:
        return {d.generic_add(a.code, b.code)};
    }
  }

  Elem neg(Elem a) const {
    const auto& d = *d_;
    if (a.code == 0) return a;
    switch (d.arith) {
      case detail::Arith::BinaryTable:
        return a;
      case detail::Arith::Prime:
        return {d.p - a.code};
      case detail::Arith::OddTable:
        return {d.exp[d.log[a.code] + d.log_minus_one]};
      default:
        return {d.generic_neg(a.code)};
    }
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    const auto& d = *d_;
    if (a.code == 0 || b.code == 0) return {0};
    switch (d.arith) {
      case detail::Arith::Prime:
        return {static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(a.code) * b.code) % d.p)};
      case detail::Arith::BinaryTable:
      case detail::Arith::OddTable:
        return {d.exp[d.log[a.code] + d.log[b.code]]};
      default:
        return {d.generic_mul(a.code, b.code)};
    }
  }

  /// Throws std::domain_error on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(Elem a) const { return pow(a, d_->p); }

  /// y += a * x, elementwise.
  void axpy(std::span<Elem> y, Elem a, std::span<const Elem> x) const;
  void scale(std::span<Elem> y, Elem a) const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.d_ == b.d_ || (a.d_->p == b.d_->p && a.d_->k == b.d_->k &&
                            a.d_->modulus == b.d_->modulus);
  }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::FieldData> d_;
};

/// Univariate polynomial over a Field; coefficients ascending, no trailing zeros.
class Poly {
 public:
  explicit Poly(Field f) : f_(std::move(f)) {}
  Poly(Field f, std::vector<Elem> coeffs);
  static Poly constant(const Field& f, Elem c) { return Poly(f, {c}); }
  static Poly x(const Field& f) { return Poly(f, {f.zero(), f.one()}); }
  static Poly monomial(const Field& f, std::size_t degree, Elem c);
  /// Coefficients given as integers (reduced mod p), ascending.
  static Poly from_ints(const Field& f, std::initializer_list<std::int64_t> coeffs);

  const Field& field() const { return f_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Elem lead() const { return c_.empty() ? Elem{0} : c_.back(); }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Elem{0}; }
  Elem eval(Elem x) const;
  Poly monic() const;
  Poly derivative() const;
  std::string str(const std::string& var = "x") const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator%(const Poly& a, const Poly& b);
  friend Poly operator/(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.f_ == b.f_ && a.c_ == b.c_;
  }

 private:
  void normalize();
  Field f_;
  std::vector<Elem> c_;
};

/// (quotient, remainder); throws std::domain_error for a zero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

/// Monic gcd; gcd(f, 0) = monic(f). Throws std::invalid_argument for mixed fields.
Poly poly_gcd(const Poly& f, const Poly& g);

/// (g, s, t) with g = s f + t h monic.
struct Bezout {
  Poly g, s, t;
};
Bezout poly_xgcd(const Poly& f, const Poly& h);

Poly poly_lcm(const Poly& f, const Poly& g);

/// base^e mod m by repeated squaring.
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);

/// x^q mod m, q the field order; throws std::invalid_argument for constant m.
Poly xq_mod(const Poly& m);

bool is_squarefree(const Poly& f);

/// True iff f is a product of distinct linear factors over its field,
/// i.e. f divides x^q - x.
bool divides_xq_minus_x(const Poly& f);

/// Roots of m lying in its field, with multiplicity, ascending by code.
/// Throws std::invalid_argument for the zero polynomial.
std::vector<Elem> roots_in_field(const Poly& m);

/// Rabin irreducibility test over the field of f.
bool is_irreducible(const Poly& f);

/// An embedding of `small` into `big` (k_small | k_big, same p): the image
/// of the generator x of `small`, chosen as the least root in `big` of the
/// defining polynomial of `small`.
class Embedding {
 public:
  Embedding(const Field& small, const Field& big);
  Elem operator()(Elem a) const;
  const Field& source() const { return small_; }
  const Field& target() const { return big_; }

 private:
  Field small_, big_;
  Elem image_of_x_;
};

}  // namespace toral::ff
