#include "qforms/hilbert.hpp"

#include <algorithm>

#include "qforms/error.hpp"

namespace qforms {

namespace {

int odd_unit_legendre(const Rational& u, std::uint64_t p) {
  return legendre_symbol(u.get_num(), p) * legendre_symbol(u.get_den(), p);
}

int eps2(std::uint64_t u) { return static_cast<int>(((u - 1) / 2) & 1); }
int omega2(std::uint64_t u) { return static_cast<int>(((u * u - 1) / 8) & 1); }

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, Place v) {
  if (a == 0 || b == 0) fail(ErrorKind::ZeroInput, "Hilbert symbol of zero");
  if (v.is_infinite()) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
  const std::uint64_t p = v.p();
  const long alpha = padic_valuation(a, p);
  const long beta = padic_valuation(b, p);
  const Rational u = unit_part(a, p);
  const Rational w = unit_part(b, p);
  const bool alpha_odd = (alpha & 1) != 0;
  const bool beta_odd = (beta & 1) != 0;
  if (p == 2) {
    const std::uint64_t u8 = residue_mod(u, 8);
    const std::uint64_t w8 = residue_mod(w, 8);
    int e = eps2(u8) * eps2(w8);
    if (alpha_odd) e += omega2(w8);
    if (beta_odd) e += omega2(u8);
    return (e & 1) ? -1 : 1;
  }
  int result = 1;
  if (alpha_odd && beta_odd && ((p - 1) / 2) % 2 == 1) result = -result;
  if (beta_odd) result *= odd_unit_legendre(u, p);
  if (alpha_odd) result *= odd_unit_legendre(w, p);
  return result;
}

int hilbert_symbol(const LocalClass& a, const LocalClass& b) {
  if (a.place != b.place) {
    fail(ErrorKind::PreconditionViolated, "local classes live at different places");
  }
  return hilbert_symbol(Rational(a.representative()), Rational(b.representative()), a.place);
}

std::vector<Place> candidate_places(const std::vector<Rational>& xs) {
  std::vector<std::uint64_t> primes;
  for (const auto& x : xs) {
    auto ps = odd_prime_divisors(x);
    primes.insert(primes.end(), ps.begin(), ps.end());
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<Place> out{Place::infinity(), Place::prime(2)};
  for (auto p : primes) out.push_back(Place::prime(p));
  return out;
}

std::vector<Place> hilbert_support(const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) fail(ErrorKind::ZeroInput, "Hilbert symbol of zero");
  std::vector<Place> out;
  for (const auto& v : candidate_places({a, b})) {
    if (hilbert_symbol(a, b, v) == -1) out.push_back(v);
  }
  return out;
}

Rational nonsquare_partner(const Rational& a, Place v) {
  if (a == 0) fail(ErrorKind::ZeroInput, "nonsquare partner of zero");
  if (is_local_square(a, v)) {
    fail(ErrorKind::IsSquare, to_string(a) + " is a square at " + v.to_string());
  }
  for (const auto& c : LocalClass::all(v)) {
    const Rational b(c.representative());
    if (hilbert_symbol(a, b, v) == -1) return b;
  }
  fail(ErrorKind::IsSquare, "no partner found");
}

}  // namespace qforms
