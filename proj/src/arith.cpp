#include "qforms/arith.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "qforms/error.hpp"

namespace qforms {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool fits_u64(const Integer& n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

u64 to_u64(const Integer& n) {
  // mpz_get_ui is 64-bit on LP64 targets.
  return static_cast<u64>(mpz_get_ui(n.get_mpz_t()));
}

const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = [] {
    constexpr u64 limit = 1000;
    std::vector<bool> composite(limit + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Brent's variant of Pollard rho; n must be an odd composite.
u64 rho_u64(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min<u64>(128, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u64(q, n);
        k += 128;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_u64(u64 n, std::map<u64, int>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  u64 d = rho_u64(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

Integer rho_mpz(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto f = [&](const Integer& v) -> Integer {
      Integer r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      Integer diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_mpz(const Integer& n, std::map<u64, int>& out) {
  if (n == 1) return;
  if (fits_u64(n)) {
    factor_u64(to_u64(n), out);
    return;
  }
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    fail(ErrorKind::PrimeTooLarge,
         "prime factor " + n.get_str() + " exceeds the supported place range");
  }
  Integer d = rho_mpz(n);
  factor_mpz(d, out);
  factor_mpz(n / d, out);
}

int jacobi_u64(u64 a, u64 n) {
  a %= n;
  int t = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const u64 r = n & 7;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

}  // namespace

// ---------------------------------------------------------------------------

Rational parse_rational(std::string_view text) {
  auto bad = [&](const std::string& why) -> Rational {
    fail(ErrorKind::ParseError, "invalid rational '" + std::string(text) + "': " + why);
  };
  if (text.empty()) return bad("empty");
  const auto slash = text.find('/');
  auto integer_ok = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  const std::string_view num = text.substr(0, slash);
  if (!integer_ok(num, true)) return bad("numerator is not an integer");
  std::string num_text(num);
  if (num_text[0] == '+') num_text.erase(0, 1);
  Integer n(num_text);
  Integer d = 1;
  if (slash != std::string_view::npos) {
    const std::string_view den = text.substr(slash + 1);
    if (!integer_ok(den, false)) return bad("denominator must be a positive integer");
    d = Integer(std::string(den));
    if (d == 0) return bad("zero denominator");
  }
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& x) { return x.get_str(); }
std::string to_string(const Integer& x) { return x.get_str(); }

int sign(const Rational& x) { return sgn(x); }

bool is_prime_u64(u64 n) noexcept {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<u64, int>> factorize(const Integer& n) {
  if (n == 0) fail(ErrorKind::ZeroInput, "cannot factor zero");
  Integer m = abs(n);
  std::map<u64, int> found;
  for (u64 p : small_primes()) {
    if (m == 1) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++found[p];
    }
  }
  factor_mpz(m, found);
  for (const auto& [p, e] : found) {
    if (p > kMaxPlacePrime) {
      fail(ErrorKind::PrimeTooLarge,
           "prime factor " + std::to_string(p) + " exceeds the supported place range");
    }
  }
  return {found.begin(), found.end()};
}

std::vector<u64> odd_prime_divisors(const Rational& x) {
  std::vector<u64> out;
  for (const Integer* part : {&x.get_num(), &x.get_den()}) {
    if (*part == 0) fail(ErrorKind::ZeroInput, "zero has no prime divisors");
    for (const auto& [p, e] : factorize(*part)) {
      if (p != 2) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_squarefree_u64(u64 n) noexcept {
  if (n == 0) return false;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    if (p > 2 && p * p * p > n) {
      // n has at most one prime factor above p; a square of it would exceed n.
      break;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

Place Place::prime(u64 p) {
  if (p > kMaxPlacePrime) {
    fail(ErrorKind::PrimeTooLarge, std::to_string(p) + " is beyond the supported place range");
  }
  if (!is_prime_u64(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  Place v;
  v.p_ = p;
  return v;
}

Place Place::prime(const Integer& p) {
  if (p <= 1) fail(ErrorKind::NotPrime, p.get_str() + " is not prime");
  if (!fits_u64(p) || to_u64(p) > kMaxPlacePrime) {
    fail(ErrorKind::PrimeTooLarge, p.get_str() + " is beyond the supported place range");
  }
  return prime(to_u64(p));
}

Place Place::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "oo") return infinity();
  if (text.empty() ||
      !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    fail(ErrorKind::ParseError, "invalid place '" + std::string(text) + "'");
  }
  return prime(Integer(std::string(text)));
}

std::string Place::to_string() const { return is_infinite() ? "inf" : std::to_string(p_); }

// ---------------------------------------------------------------------------

std::string SquareClass::to_string() const { return as_integer().get_str(); }

SquareClass squarefree_part(const Rational& x) {
  if (x == 0) fail(ErrorKind::ZeroInput, "zero has no square class");
  SquareClass out;
  out.sign = sgn(x) < 0 ? -1 : 1;
  Integer core = 1;
  for (const Integer* part : {&x.get_num(), &x.get_den()}) {
    for (const auto& [p, e] : factorize(*part)) {
      if (e % 2) core *= p;
    }
  }
  out.squarefree = core;
  return out;
}

SquareClass operator*(const SquareClass& a, const SquareClass& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.squarefree.get_mpz_t(), b.squarefree.get_mpz_t());
  SquareClass out;
  out.sign = a.sign * b.sign;
  out.squarefree = (a.squarefree / g) * (b.squarefree / g);
  return out;
}

// ---------------------------------------------------------------------------

long padic_valuation(const Integer& x, u64 p) {
  if (x == 0) fail(ErrorKind::ZeroInput, "valuation of zero");
  if (mpz_divisible_ui_p(x.get_mpz_t(), p) == 0) return 0;
  Integer tmp;
  Integer prime(static_cast<unsigned long>(p));
  return static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()));
}

long padic_valuation(const Rational& x, u64 p) {
  if (x == 0) fail(ErrorKind::ZeroInput, "valuation of zero");
  return padic_valuation(x.get_num(), p) - padic_valuation(x.get_den(), p);
}

Rational unit_part(const Rational& x, u64 p) {
  if (x == 0) fail(ErrorKind::ZeroInput, "unit part of zero");
  Integer num, den;
  Integer prime(static_cast<unsigned long>(p));
  mpz_remove(num.get_mpz_t(), x.get_num().get_mpz_t(), prime.get_mpz_t());
  mpz_remove(den.get_mpz_t(), x.get_den().get_mpz_t(), prime.get_mpz_t());
  return Rational(num, den);
}

int legendre_symbol(const Integer& a, u64 p) {
  const u64 r = static_cast<u64>(mpz_fdiv_ui(a.get_mpz_t(), p));
  if (r == 0) {
    fail(ErrorKind::NotCoprime, a.get_str() + " is divisible by " + std::to_string(p));
  }
  return jacobi_u64(r, p);
}

u64 smallest_nonresidue(u64 p) {
  for (u64 a = 2;; ++a) {
    if (jacobi_u64(a, p) == -1) return a;
  }
}

u64 residue_mod(const Rational& x, u64 m) {
  const u64 n = static_cast<u64>(mpz_fdiv_ui(x.get_num().get_mpz_t(), m));
  const u64 d = static_cast<u64>(mpz_fdiv_ui(x.get_den().get_mpz_t(), m));
  Integer inv;
  Integer dd(static_cast<unsigned long>(d)), mm(static_cast<unsigned long>(m));
  if (mpz_invert(inv.get_mpz_t(), dd.get_mpz_t(), mm.get_mpz_t()) == 0) {
    fail(ErrorKind::NotCoprime, "denominator not invertible modulo " + std::to_string(m));
  }
  return mulmod(n, to_u64(inv), m);
}

bool is_local_square(const Rational& x, Place v) {
  if (x == 0) fail(ErrorKind::ZeroInput, "square test of zero");
  return LocalClass::of(x, v).is_square();
}

// ---------------------------------------------------------------------------

LocalClass LocalClass::of(const Rational& x, Place v) {
  if (x == 0) fail(ErrorKind::ZeroInput, "square class of zero");
  LocalClass c;
  c.place = v;
  if (v.is_infinite()) {
    c.unit = sgn(x) > 0 ? 1 : -1;
    return c;
  }
  const u64 p = v.p();
  c.odd_valuation = (padic_valuation(x, p) % 2) != 0;
  const Rational u = unit_part(x, p);
  if (p == 2) {
    c.unit = static_cast<int>(residue_mod(u, 8));
  } else {
    c.unit = legendre_symbol(u.get_num(), p) * legendre_symbol(u.get_den(), p);
  }
  return c;
}

std::vector<LocalClass> LocalClass::all(Place v) {
  std::vector<LocalClass> out;
  if (v.is_infinite()) {
    out.push_back({v, false, 1});
    out.push_back({v, false, -1});
    return out;
  }
  if (v.is_dyadic()) {
    for (bool odd : {false, true}) {
      for (int u : {1, 7, 5, 3}) out.push_back({v, odd, u});
    }
    return out;
  }
  for (bool odd : {false, true}) {
    for (int u : {1, -1}) out.push_back({v, odd, u});
  }
  return out;
}

Integer LocalClass::representative() const {
  if (place.is_infinite()) return Integer(unit);
  const u64 p = place.p();
  Integer rep;
  if (p == 2) {
    // 1, 3 = -5, 5, 7 = -1 (mod 8)
    switch (unit) {
      case 1: rep = 1; break;
      case 3: rep = -5; break;
      case 5: rep = 5; break;
      default: rep = -1; break;
    }
    if (odd_valuation) rep *= 2;
    return rep;
  }
  rep = unit == 1 ? Integer(1) : Integer(static_cast<unsigned long>(smallest_nonresidue(p)));
  if (odd_valuation) rep *= static_cast<unsigned long>(p);
  return rep;
}

LocalClass operator*(const LocalClass& a, const LocalClass& b) {
  if (a.place != b.place) {
    fail(ErrorKind::PreconditionViolated, "local classes live at different places");
  }
  return LocalClass::of(Rational(a.representative() * b.representative()), a.place);
}

}  // namespace qforms
