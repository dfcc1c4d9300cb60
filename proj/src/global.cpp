#include "qforms/global.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "qforms/error.hpp"
#include "qforms/hilbert.hpp"
#include "qforms/local.hpp"

namespace qforms {

namespace {

using u64 = std::uint64_t;

bool squarefree_small(u64 k) {
  if (k % 4 == 0) return false;
  for (u64 p = 3; p * p <= k; p += 2) {
    if (k % (p * p) == 0) return false;
  }
  return true;
}

int power_sign(int base, long e) { return (e % 2 == 0) ? 1 : base; }

bool lorentzian(const DiagonalForm& q) {
  const auto s = q.signature();
  return q.dim() >= 3 && (s.minus == 1 || s.plus == 1);
}

}  // namespace

long search_bound() {
  if (const char* env = std::getenv("QFORMS_SEARCH_BOUND")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return kDefaultSearchBound;
}

// ---------------------------------------------------------------------------

bool globally_isometric(const DiagonalForm& q1, const DiagonalForm& q2) {
  if (q1.dim() != q2.dim()) return false;
  if (!(q1.det_class() == q2.det_class())) return false;
  if (!(q1.signature() == q2.signature())) return false;
  for (const auto& v : union_support({&q1, &q2})) {
    if (!local_isometric(q1, q2, v)) return false;
  }
  return true;
}

namespace {

// Integer square root test for nonnegative 128-bit values.
bool perfect_square(__int128 t, __int128& root) {
  if (t < 0) return false;
  if (t == 0) {
    root = 0;
    return true;
  }
  auto r = static_cast<__int128>(std::sqrt(static_cast<long double>(t)));
  while (r * r > t) --r;
  while ((r + 1) * (r + 1) <= t) ++r;
  root = r;
  return r * r == t;
}

// Searches sum s_i y_i^2 = 0 with the first d-1 coordinates in growing
// max-norm shells and the last one solved for.
std::optional<std::vector<long>> small_zero(const std::vector<long>& s) {
  const std::size_t d = s.size();
  if (d < 2) return std::nullopt;
  static const long kShell[] = {0, 0, 1, 60, 40, 16, 8};
  const long bmax = kShell[std::min<std::size_t>(d, 6)];
  std::vector<long> y(d - 1, 0);
  for (long b = 1; b <= bmax; ++b) {
    std::fill(y.begin(), y.end(), 0);
    while (true) {
      const bool on_shell = *std::max_element(y.begin(), y.end()) == b;
      if (on_shell) {
        __int128 t = 0;
        for (std::size_t i = 0; i + 1 < d; ++i) t -= static_cast<__int128>(s[i]) * y[i] * y[i];
        const long last = s[d - 1];
        if (t % last == 0) {
          __int128 root = 0;
          if (perfect_square(t / last, root)) {
            std::vector<long> out(y.begin(), y.end());
            out.push_back(static_cast<long>(root));
            return out;
          }
        }
      }
      std::size_t i = 0;
      while (i < y.size() && y[i] == b) y[i++] = 0;
      if (i == y.size()) break;
      ++y[i];
    }
  }
  return std::nullopt;
}

Rational rational_sqrt(const Rational& x) {
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), x.get_num().get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), x.get_den().get_mpz_t());
  return Rational(n, d);
}

}  // namespace

IsotropyResult globally_isotropic(const DiagonalForm& q) {
  IsotropyResult out;
  out.isotropic = true;
  for (const auto& v : q.support()) {
    if (!local_isotropic(q, v)) {
      out.isotropic = false;
      return out;
    }
  }
  if (q.dim() > 6) return out;
  // a_i = s_i k_i^2 with s_i squarefree; a zero y of <s_i> gives x_i = y_i / k_i.
  std::vector<long> s;
  std::vector<Rational> k;
  for (const auto& a : q.entries()) {
    const auto c = squarefree_part(a);
    if (!c.squarefree.fits_slong_p() || abs(c.squarefree) > (1L << 30)) return out;
    s.push_back(c.sign * c.squarefree.get_si());
    k.push_back(rational_sqrt(a / Rational(s.back())));
  }
  if (auto y = small_zero(s)) {
    std::vector<Rational> x;
    for (std::size_t i = 0; i < y->size(); ++i) x.push_back(Rational((*y)[i]) / k[i]);
    out.witness = x;
  }
  return out;
}

// ---------------------------------------------------------------------------

Integer square_existence(const std::vector<LocalClass>& constraints) {
  return square_existence_if(constraints, [](const Integer&) { return true; });
}

Integer square_existence_if(const std::vector<LocalClass>& constraints,
                            const std::function<bool(const Integer&)>& accept) {
  std::set<Place> seen;
  std::optional<int> sigma;
  Integer s0 = 1;
  std::vector<u64> primes;
  for (const auto& c : constraints) {
    if (!seen.insert(c.place).second) {
      fail(ErrorKind::PreconditionViolated,
           "two constraints at place " + c.place.to_string());
    }
    if (c.place.is_infinite()) {
      sigma = c.unit;
    } else {
      primes.push_back(c.place.p());
      if (c.odd_valuation) s0 *= static_cast<unsigned long>(c.place.p());
    }
  }
  const long bound = search_bound();
  for (long k = 1; k <= bound; ++k) {
    const u64 uk = static_cast<u64>(k);
    if (!squarefree_small(uk)) continue;
    if (std::any_of(primes.begin(), primes.end(), [&](u64 p) { return uk % p == 0; })) continue;
    for (int sign : {1, -1}) {
      if (sigma && *sigma != sign) continue;
      const Integer cand = Integer(sign) * s0 * Integer(static_cast<unsigned long>(k));
      const Rational x(cand);
      bool ok = true;
      for (const auto& c : constraints) {
        if (!(LocalClass::of(x, c.place) == c)) {
          ok = false;
          break;
        }
      }
      if (ok && accept(cand)) return cand;
    }
  }
  fail(ErrorKind::SearchExhausted,
       "square-class search exceeded the bound " + std::to_string(bound));
}

Integer find_with_symbols(const Rational& b, const std::vector<Place>& ramified,
                          std::optional<int> sign) {
  if (b == 0) fail(ErrorKind::ZeroInput, "Hilbert symbol of zero");
  std::vector<Place> target(ramified.begin(), ramified.end());
  std::sort(target.begin(), target.end());
  target.erase(std::unique(target.begin(), target.end()), target.end());
  if (target.size() % 2 != 0) {
    fail(ErrorKind::PreconditionViolated, "a ramification set has even size");
  }
  std::vector<LocalClass> constraints;
  bool inf_in = false;
  for (const auto& v : target) {
    if (is_local_square(b, v)) {
      fail(ErrorKind::PreconditionViolated,
           to_string(b) + " is a square at " + v.to_string() + ", symbols there are trivial");
    }
    if (v.is_infinite()) {
      inf_in = true;
    } else {
      constraints.push_back(LocalClass::of(nonsquare_partner(b, v), v));
    }
  }
  std::optional<int> want = sign;
  if (inf_in) {
    if (sign && *sign > 0) {
      fail(ErrorKind::PreconditionViolated, "ramification at inf forces a negative value");
    }
    want = -1;
  } else if (sgn(b) < 0) {
    if (sign && *sign < 0) {
      fail(ErrorKind::PreconditionViolated, "a negative value would ramify at inf");
    }
    want = 1;
  }
  if (want) constraints.push_back(LocalClass{Place::infinity(), false, *want});

  const auto b_places = candidate_places({b});
  auto accept = [&](const Integer& a) {
    const Rational ar(a);
    std::set<Place> places(b_places.begin(), b_places.end());
    for (auto p : odd_prime_divisors(ar)) places.insert(Place::prime(p));
    for (const auto& v : places) {
      const bool in = std::binary_search(target.begin(), target.end(), v);
      if ((hilbert_symbol(ar, b, v) == -1) != in) return false;
    }
    return true;
  };
  return square_existence_if(constraints, accept);
}

// ---------------------------------------------------------------------------

SynthesisProfile synthesis_profile(const DiagonalForm& q) {
  SynthesisProfile p;
  p.dim = q.dim();
  p.det = q.det_class();
  p.signature = q.signature();
  for (const auto& v : q.support()) {
    if (v.is_finite() && hasse_invariant(q, v) == -1) p.minus_set.push_back(v);
  }
  return p;
}

void validate_profile(const SynthesisProfile& profile) {
  auto bad = [](const std::string& why) { fail(ErrorKind::InvalidProfile, why); };
  const int m = profile.dim;
  const auto& sig = profile.signature;
  if (m < 1) bad("dimension must be positive");
  if (sig.plus < 0 || sig.minus < 0 || sig.plus + sig.minus != m) {
    bad("signature does not add up to the dimension");
  }
  if (profile.det.squarefree < 1 || (profile.det.sign != 1 && profile.det.sign != -1)) {
    bad("determinant is not a signed squarefree class");
  }
  const int expected_sign = (sig.minus % 2 == 0) ? 1 : -1;
  if (profile.det.sign != expected_sign) bad("determinant sign contradicts the signature");
  std::set<Place> seen;
  for (const auto& v : profile.minus_set) {
    if (v.is_infinite()) bad("the real Hasse invariant is fixed by the signature");
    if (!seen.insert(v).second) bad("place " + v.to_string() + " listed twice");
  }
  const long n = sig.minus;
  const int c_inf = power_sign(-1, n * (n - 1) / 2);
  const std::size_t minus_count = profile.minus_set.size() + (c_inf == -1 ? 1 : 0);
  if (minus_count % 2 != 0) bad("odd number of places with Hasse invariant -1");
  const Rational d = profile.det.value();
  for (const auto& v : profile.minus_set) {
    if (!local_form_exists(m, LocalClass::of(d, v), -1, v)) {
      bad("no local form with c = -1 at " + v.to_string() + " for this dimension and determinant");
    }
  }
}

namespace {

Rational reduced(const Rational& x) { return Rational(squarefree_part(x).as_integer()); }

}  // namespace

DiagonalForm synthesize_form(const SynthesisProfile& profile) {
  validate_profile(profile);
  const int m = profile.dim;
  const Rational d = profile.det.value();
  const auto& sig = profile.signature;
  std::set<Place> minus(profile.minus_set.begin(), profile.minus_set.end());

  DiagonalForm result({Rational(1)});
  if (m == 1) {
    result = DiagonalForm({d});
  } else if (m == 2) {
    std::vector<Place> ramified(minus.begin(), minus.end());
    std::optional<int> sign;
    if (sig.minus == 2) {
      ramified.insert(ramified.begin(), Place::infinity());
    } else if (sig.plus == 2) {
      sign = 1;
    }
    const Rational a(find_with_symbols(-d, ramified, sign));
    result = DiagonalForm({a, reduced(a * d)});
  } else {
    const int p_tail = std::min(sig.plus, 3);
    const int n_tail = 3 - p_tail;
    const int p_pre = sig.plus - p_tail;
    const int n_pre = sig.minus - n_tail;
    const Rational det_pre = (n_pre % 2 == 0) ? 1 : -1;
    const Rational delta = d * det_pre;

    std::set<Place> places(minus.begin(), minus.end());
    for (const auto& v : candidate_places({d})) places.insert(v);
    const long nm = sig.minus;
    std::vector<Place> ramified;
    for (const auto& v : places) {
      int c_q = v.is_infinite() ? power_sign(-1, nm * (nm - 1) / 2) : (minus.count(v) ? -1 : 1);
      const int c_pre = power_sign(hilbert_symbol(-1, -1, v), static_cast<long>(n_pre) * (n_pre - 1) / 2);
      const int c_tail = c_q * c_pre * hilbert_symbol(det_pre, delta, v);
      if (c_tail * hilbert_symbol(delta, -1, v) * hilbert_symbol(-1, -1, v) == -1) {
        ramified.push_back(v);
      }
    }
    Integer b = 1;
    for (const auto& v : ramified) {
      if (v.is_infinite()) {
        b = -b;
      } else {
        b *= static_cast<unsigned long>(v.p());
      }
    }
    const Rational br(b);
    const Rational a(find_with_symbols(br, ramified));
    std::vector<Rational> entries;
    for (int i = 0; i < p_pre; ++i) entries.emplace_back(1);
    for (int i = 0; i < n_pre; ++i) entries.emplace_back(-1);
    entries.push_back(reduced(-delta * a));
    entries.push_back(reduced(-delta * br));
    entries.push_back(reduced(delta * a * br));
    result = DiagonalForm(std::move(entries));
  }

  const auto got = synthesis_profile(result);
  std::vector<Place> want(minus.begin(), minus.end());
  if (!(got.det == profile.det) || !(got.signature == sig) || got.minus_set != want) {
    fail(ErrorKind::SearchExhausted,
         "synthesized " + result.to_string() + " does not reproduce the profile");
  }
  return result;
}

// ---------------------------------------------------------------------------

bool is_subform(const DiagonalForm& r, const DiagonalForm& q) {
  if (r.dim() > q.dim()) {
    fail(ErrorKind::DimensionExceeded, "subform candidate is larger than the ambient form");
  }
  if (!local_subform(r, q, Place::infinity())) return false;
  const int codim = q.dim() - r.dim();
  if (codim == 0) return globally_isometric(r, q);
  if (codim >= 3) return true;
  for (const auto& v : union_support({&r, &q})) {
    if (v.is_finite() && !local_subform(r, q, v)) return false;
  }
  return true;
}

std::optional<SquareClass> similar(const DiagonalForm& q1, const DiagonalForm& q2) {
  if (q1.dim() != q2.dim()) return std::nullopt;
  if (q1.dim() % 2 == 1) {
    const Rational lambda = q2.det() / q1.det();
    if (globally_isometric(scale(q1, lambda), q2)) return squarefree_part(lambda);
    return std::nullopt;
  }
  if (!(q1.det_class() == q2.det_class())) return std::nullopt;
  const Rational disc(q1.disc_class().as_integer());
  const auto places = union_support({&q1, &q2});
  const auto s1 = q1.signature();
  const auto s2 = q2.signature();
  for (int sigma : {1, -1}) {
    const Signature moved = sigma > 0 ? s1 : Signature{s1.minus, s1.plus};
    if (!(moved == s2)) continue;
    std::vector<Place> ramified;
    bool possible = true;
    for (const auto& v : places) {
      const int eps = hasse_invariant(q1, v) * hasse_invariant(q2, v);
      if (v.is_infinite() && hilbert_symbol(sigma, disc, v) != eps) possible = false;
      if (eps == -1) {
        if (is_local_square(disc, v)) possible = false;
        ramified.push_back(v);
      }
    }
    if (!possible || ramified.size() % 2 != 0) continue;
    const Integer lambda = find_with_symbols(disc, ramified, sigma);
    if (globally_isometric(scale(q1, Rational(lambda)), q2)) {
      return squarefree_part(Rational(lambda));
    }
  }
  return std::nullopt;
}

Isogroupy isogroupic(const DiagonalForm& q1, const DiagonalForm& q2) {
  Isogroupy out;
  if (q1.dim() != q2.dim()) return out;
  out.lambda = similar(q1, q2);
  if (out.lambda) {
    out.verdict = IsogroupyVerdict::Yes;
  } else if (q1.dim() % 2 == 1 || (lorentzian(q1) && lorentzian(q2))) {
    out.verdict = IsogroupyVerdict::No;
  } else {
    out.verdict = IsogroupyVerdict::UnknownEvenDim;
  }
  return out;
}

}  // namespace qforms
