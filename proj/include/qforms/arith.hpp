#pragma once

// Exact arithmetic over Q: rationals, places, square classes and the
// local square-class tags used by every decision procedure.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qforms {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "a" or "a/b" (b > 0, optional leading sign on a). The result is
/// canonicalized. Throws ParseError on malformed text.
Rational parse_rational(std::string_view text);

/// Canonical text: "a" for integers, "a/b" otherwise.
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

int sign(const Rational& x);

// ---------------------------------------------------------------------------
// Primes and factorization

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n) noexcept;

/// Largest prime accepted as a place.
inline constexpr std::uint64_t kMaxPlacePrime = (std::uint64_t{1} << 63) - 1;

/// Prime factorization of |n| (n != 0) as ascending (prime, exponent) pairs.
/// Throws PrimeTooLarge when a factor exceeds kMaxPlacePrime.
std::vector<std::pair<std::uint64_t, int>> factorize(const Integer& n);

/// Odd primes dividing the numerator or denominator of x.
std::vector<std::uint64_t> odd_prime_divisors(const Rational& x);

bool is_squarefree_u64(std::uint64_t n) noexcept;

// ---------------------------------------------------------------------------
// Places

/// The real place or a finite prime of Q. Ordered with the real place first.
class Place {
 public:
  static Place infinity() noexcept { return Place{}; }
  /// Verifies primality; throws NotPrime or PrimeTooLarge.
  static Place prime(std::uint64_t p);
  static Place prime(const Integer& p);
  /// "inf" or a decimal prime.
  static Place parse(std::string_view text);

  bool is_infinite() const noexcept { return p_ == 0; }
  bool is_finite() const noexcept { return p_ != 0; }
  bool is_dyadic() const noexcept { return p_ == 2; }
  /// The prime; 0 for the real place.
  std::uint64_t p() const noexcept { return p_; }

  std::string to_string() const;

  auto operator<=>(const Place&) const = default;

 private:
  std::uint64_t p_ = 0;
};

// ---------------------------------------------------------------------------
// Global square classes

/// A square class of Q^x, canonically a signed squarefree integer.
struct SquareClass {
  int sign = 1;
  Integer squarefree = 1;

  Rational value() const { return Rational(sign * squarefree); }
  Integer as_integer() const { return sign * squarefree; }
  bool is_square() const { return sign > 0 && squarefree == 1; }
  std::string to_string() const;

  friend bool operator==(const SquareClass& a, const SquareClass& b) {
    return a.sign == b.sign && a.squarefree == b.squarefree;
  }
};

/// Canonical signed squarefree representative of the class of x (x != 0).
SquareClass squarefree_part(const Rational& x);

SquareClass operator*(const SquareClass& a, const SquareClass& b);

// ---------------------------------------------------------------------------
// Local arithmetic

/// v_p(x) for x != 0.
long padic_valuation(const Rational& x, std::uint64_t p);
long padic_valuation(const Integer& x, std::uint64_t p);

/// x = p^v * u; returns the unit part u.
Rational unit_part(const Rational& x, std::uint64_t p);

/// (a|p) for an odd prime p with gcd(a, p) = 1. Throws NotCoprime.
int legendre_symbol(const Integer& a, std::uint64_t p);

/// Smallest positive quadratic nonresidue mod an odd prime p.
std::uint64_t smallest_nonresidue(std::uint64_t p);

/// num(x) * den(x)^-1 mod m; the denominator must be invertible mod m.
std::uint64_t residue_mod(const Rational& x, std::uint64_t m);

/// Whether x lies in (Q_v^x)^2.
bool is_local_square(const Rational& x, Place v);

/// A square class of Q_v^x in tagged form.
///  - real place: unit is the sign (+1/-1), odd_valuation unused
///  - odd p: unit is the Legendre symbol of the unit part
///  - p = 2: unit is the unit part mod 8 (1, 3, 5 or 7)
struct LocalClass {
  Place place;
  bool odd_valuation = false;
  int unit = 1;

  static LocalClass of(const Rational& x, Place v);
  /// Every square class of Q_v^x, in canonical order.
  static std::vector<LocalClass> all(Place v);

  /// Canonical integer representative: +-1 at the real place;
  /// 1, u, p, up at odd p (u the smallest nonresidue);
  /// +-1, +-5, +-2, +-10 at 2.
  Integer representative() const;
  bool is_square() const noexcept {
    return !odd_valuation && unit == 1;
  }

  friend bool operator==(const LocalClass&, const LocalClass&) = default;
};

LocalClass operator*(const LocalClass& a, const LocalClass& b);

}  // namespace qforms
