#include "qforms/hyperbolic.hpp"

#include <algorithm>
#include <set>

#include "qforms/error.hpp"
#include "qforms/global.hpp"
#include "qforms/hilbert.hpp"
#include "qforms/local.hpp"

namespace qforms {

namespace {

using u64 = std::uint64_t;

int power_sign(int base, long e) { return (e % 2 == 0) ? 1 : base; }

void require_admissible(const DiagonalForm& q) {
  if (!is_admissible(q)) {
    fail(ErrorKind::NotAdmissible, q.to_string() + " is not Lorentzian over R");
  }
}

// Odd primes of the union support ascending, then 2.
std::vector<Place> scan_order(const DiagonalForm& a, const DiagonalForm& b) {
  std::vector<Place> out;
  for (const auto& v : union_support({&a, &b})) {
    if (v.is_finite() && !v.is_dyadic()) out.push_back(v);
  }
  out.push_back(Place::prime(2));
  return out;
}

Rational positive_scalar(const Rational& want_class, Place v0) {
  return Rational(square_existence({LocalClass::of(want_class, v0),
                                    LocalClass{Place::infinity(), false, 1}}));
}

constexpr u64 kPlaceScanLimit = 1'000'000;

}  // namespace

bool is_admissible(const DiagonalForm& q) {
  if (q.dim() < 3) fail(ErrorKind::DimensionTooSmall, "hyperbolic pairs need dimension at least 3");
  const auto s = q.signature();
  return s.minus == 1 || s.plus == 1;
}

bool commensurable(const DiagonalForm& q1, const DiagonalForm& q2) {
  require_admissible(q1);
  require_admissible(q2);
  return similar(q1, q2).has_value();
}

std::optional<Distinction> normalize_for_distinction(const DiagonalForm& q1, const DiagonalForm& q2) {
  if (q1.dim() != q2.dim()) fail(ErrorKind::NotComparable, "forms of different dimension");
  require_admissible(q1);
  require_admissible(q2);
  if (similar(q1, q2)) return std::nullopt;
  const int m = q1.dim();
  DiagonalForm a = order_form(q1).second;
  DiagonalForm b = order_form(q2).second;
  const auto places = scan_order(a, b);

  if (m % 2 == 1) {
    const auto na = scale(a, a.det());
    const auto nb = scale(b, b.det());
    for (const auto& v : places) {
      if (hasse_invariant(na, v) == hasse_invariant(nb, v)) continue;
      a = scale(a, positive_scalar(a.det(), v));
      b = scale(b, positive_scalar(b.det(), v));
      return Distinction{v, CertificateKind::OddCodim1, a, b, false};
    }
    fail(ErrorKind::SearchExhausted, "no place separates the normalized forms");
  }

  const long n = m / 2;
  if (a.det_class() == b.det_class()) {
    for (const auto& v : places) {
      if (!is_local_square(a.disc(), v)) continue;
      if (hasse_invariant(a, v) == hasse_invariant(b, v)) continue;
      const int split_c = power_sign(hilbert_symbol(-1, -1, v), n * (n - 1) / 2);
      const bool swap = hasse_invariant(a, v) != split_c;
      if (swap) std::swap(a, b);
      return Distinction{v, CertificateKind::EvenCodim1, a, b, swap};
    }
    fail(ErrorKind::SearchExhausted, "no place with square discriminant separates the forms");
  }

  // Different determinants: a place where exactly one discriminant is a
  // square, scanning past the support when needed.
  std::optional<Place> v0;
  for (const auto& v : places) {
    if (is_local_square(a.disc(), v) != is_local_square(b.disc(), v)) {
      v0 = v;
      break;
    }
  }
  for (u64 p = 3; !v0 && p < kPlaceScanLimit; p += 2) {
    if (!is_prime_u64(p)) continue;
    const Place v = Place::prime(p);
    if (is_local_square(a.disc(), v) != is_local_square(b.disc(), v)) v0 = v;
  }
  if (!v0) fail(ErrorKind::SearchExhausted, "no place separates the discriminants");
  const Place v = *v0;
  const bool swap = !is_local_square(a.disc(), v);
  if (swap) std::swap(a, b);
  const long k = (m - 2) / 2;
  if (hasse_invariant(a, v) ==
      hasse_invariant(b, v) * power_sign(hilbert_symbol(-1, b.disc(), v), k)) {
    b = scale(b, positive_scalar(nonsquare_partner(b.disc(), v), v));
  }
  return Distinction{v, CertificateKind::EvenCodim2, a, b, swap};
}

std::optional<Place> distinguishing_place(const DiagonalForm& q1, const DiagonalForm& q2) {
  const auto d = normalize_for_distinction(q1, q2);
  if (!d) return std::nullopt;
  return d->v0;
}

DichotomyReport dichotomy_report(const DiagonalForm& q1, const DiagonalForm& q2) {
  require_admissible(q1);
  require_admissible(q2);
  if (q1.dim() < 5 || q2.dim() < 5) {
    fail(ErrorKind::DimensionTooSmall, "the dichotomy needs dimension at least 5");
  }
  DichotomyReport rep;
  rep.dims_equal = q1.dim() == q2.dim();
  if (!rep.dims_equal) return rep;
  const int hyperbolic_dim = q1.dim() - 1;
  rep.shared_lo = 2;
  rep.shared_hi = hyperbolic_dim - 3;
  rep.commensurable = similar(q1, q2).has_value();
  if (rep.commensurable) return rep;
  const auto d = normalize_for_distinction(q1, q2);
  switch (d->kind) {
    case CertificateKind::OddCodim1:
      rep.codim1_witness = distinguishing_subform_odd(d->q1, d->q2, d->v0).certificate;
      break;
    case CertificateKind::EvenCodim1:
      rep.codim1_witness = distinguishing_subform_even_codim1(d->q1, d->q2, d->v0).certificate;
      break;
    case CertificateKind::EvenCodim2:
      rep.codim2_witness = distinguishing_subform_even_codim2(d->q1, d->q2, d->v0).certificate;
      break;
    case CertificateKind::RealPlace:
      break;
  }
  return rep;
}

ContainmentResult contains_as_subspace(const DiagonalForm& q1, const DiagonalForm& q2) {
  require_admissible(q1);
  require_admissible(q2);
  if (q1.dim() >= q2.dim()) fail(ErrorKind::DimensionOrder, "the first form must be smaller");
  ContainmentResult res;
  const auto s1 = q1.signature();
  const auto s2 = q2.signature();
  auto fits = [&](Signature s) { return s.plus <= s2.plus && s.minus <= s2.minus; };
  if (q2.dim() - q1.dim() >= 3) {
    if (fits(s1)) {
      res.verdict = Containment::Yes;
      res.lambda = squarefree_part(1);
    } else if (fits({s1.minus, s1.plus})) {
      res.verdict = Containment::Yes;
      res.lambda = squarefree_part(-1);
    } else {
      res.verdict = Containment::No;
      res.obstruction = Place::infinity();
    }
    return res;
  }
  if (auto lambda = similar_subform_search(q1, q2)) {
    res.verdict = Containment::Yes;
    res.lambda = lambda;
    return res;
  }
  for (const auto& v : union_support({&q1, &q2})) {
    bool blocked = false;
    if (v.is_infinite()) {
      blocked = !fits(s1) && !fits({s1.minus, s1.plus});
    } else {
      blocked = local_similarity_obstruction(q1, q2, v);
    }
    if (blocked) {
      res.verdict = Containment::No;
      res.obstruction = v;
      return res;
    }
  }
  res.verdict = Containment::InconclusiveCodimLE2;
  return res;
}

// ---------------------------------------------------------------------------

bool maclachlan_parity_ok(long n, long r) {
  if (n < 1 || r < 0) return false;
  const long residue = n % 4;
  const bool want_even = residue == 0 || residue == 1;
  return (r % 2 == 0) == want_even;
}

MaclachlanClass maclachlan_form_to_primes(const DiagonalForm& q) {
  if (q.dim() % 2 == 0) fail(ErrorKind::EvenDimension, "the parametrization covers odd dimension");
  require_admissible(q);
  const int n = (q.dim() - 1) / 2;
  const auto w = scale(q, q.det_class().value());
  MaclachlanClass out;
  out.n = n;
  MaclachlanAudit audit;
  for (const auto& v : w.support()) {
    if (v.is_infinite()) continue;
    const int hh = hilbert_symbol(-1, -1, v);
    const int c = hasse_invariant(w, v);
    const bool non_split = c != power_sign(hh, static_cast<long>(n) * (n - 3) / 2);
    if (non_split) out.primes.push_back(v.p());
    int& e = hh == 1 ? audit.e_s : audit.e_r;
    int& f = hh == 1 ? audit.f_s : audit.f_r;
    if (non_split) ++e;
    if (c == -1) ++f;
  }
  const bool same_r = n % 4 == 0 || n % 4 == 3;
  const int r = static_cast<int>(out.primes.size());
  audit.consistent = audit.f_s == audit.e_s &&
                     audit.f_r == (same_r ? audit.e_r : kDeltaQ - audit.e_r) &&
                     (n + audit.f_s + audit.f_r) % 2 == 0 &&
                     hasse_invariant(w, Place::infinity()) == power_sign(-1, n) &&
                     maclachlan_parity_ok(n, r);
  out.audit = audit;
  out.witness = q;
  return out;
}

DiagonalForm maclachlan_primes_to_form(int n, const std::vector<u64>& primes) {
  if (n < 1) fail(ErrorKind::PreconditionViolated, "n must be positive");
  std::set<u64> s(primes.begin(), primes.end());
  for (auto p : s) {
    if (!is_prime_u64(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  }
  if (!maclachlan_parity_ok(n, static_cast<long>(s.size()))) {
    fail(ErrorKind::ParityViolation,
         std::to_string(s.size()) + " primes has the wrong parity for n = " + std::to_string(n));
  }
  SynthesisProfile p;
  p.dim = 2 * n + 1;
  p.det = squarefree_part(1);
  p.signature = {1, 2 * n};
  int c2 = power_sign(-1, static_cast<long>(n) * (n - 3) / 2);
  if (s.count(2)) c2 = -c2;
  if (c2 == -1) p.minus_set.push_back(Place::prime(2));
  for (auto q : s) {
    if (q != 2) p.minus_set.push_back(Place::prime(q));
  }
  return synthesize_form(p);
}

std::vector<MaclachlanClass> maclachlan_enumerate(int n, u64 prime_bound) {
  std::vector<u64> primes;
  for (u64 p = 2; p <= prime_bound; ++p) {
    if (is_prime_u64(p)) primes.push_back(p);
  }
  std::vector<MaclachlanClass> out;
  const std::size_t k = primes.size();
  for (std::size_t size = 0; size <= k; ++size) {
    if (!maclachlan_parity_ok(n, static_cast<long>(size))) continue;
    // Lexicographic combinations of `size` indices.
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      MaclachlanClass c;
      c.n = n;
      for (auto i : idx) c.primes.push_back(primes[i]);
      c.witness = maclachlan_primes_to_form(n, c.primes);
      out.push_back(std::move(c));
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == k - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace qforms
