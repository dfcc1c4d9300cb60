#include "qforms/subform.hpp"

#include <algorithm>
#include <set>

#include "qforms/error.hpp"
#include "qforms/global.hpp"
#include "qforms/hilbert.hpp"
#include "qforms/local.hpp"

namespace qforms {

namespace {

int power_sign(int base, long e) { return (e % 2 == 0) ? 1 : base; }

std::string class_string(const Rational& x, Place v) {
  return to_string(LocalClass::of(x, v).representative());
}

Json form_json(const DiagonalForm& q) {
  Json a = Json::array();
  for (const auto& x : q.entries()) a.push_back(to_string(x));
  return a;
}

Json signature_json(Signature s) { return Json::array({s.plus, s.minus}); }

bool fits(Signature inner, Signature outer) {
  return inner.plus <= outer.plus && inner.minus <= outer.minus;
}

Signature negated(Signature s) { return Signature{s.minus, s.plus}; }

bool ordered(const DiagonalForm& q) {
  const auto s = q.signature();
  return s.plus >= s.minus;
}

[[noreturn]] void violated(const std::string& why) { fail(ErrorKind::HypothesesViolated, why); }

// Hasse chain: r' carrying the local invariants of r inside the rival form
// leaves a complement whose invariants are forced.
Json chain_data(const DiagonalForm& ambient, const DiagonalForm& rival, const DiagonalForm& r,
                Place v) {
  const int codim = rival.dim() - r.dim();
  const Rational det_t = rival.det() / r.det();
  const int c_t = hasse_invariant(rival, v) * hasse_invariant(r, v) * hilbert_symbol(r.det(), det_t, v);
  Json d;
  d["det"] = {{"ambient", class_string(ambient.det(), v)},
              {"rival", class_string(rival.det(), v)},
              {"r", class_string(r.det(), v)}};
  d["hasse"] = {{"ambient", hasse_invariant(ambient, v)},
                {"rival", hasse_invariant(rival, v)},
                {"r", hasse_invariant(r, v)}};
  d["disc_r_square"] = is_local_square(r.disc(), v);
  d["complement"] = {{"dim", codim},
                     {"det", class_string(det_t, v)},
                     {"hasse", c_t},
                     {"exists", codim >= 1 && local_form_exists(codim, LocalClass::of(det_t, v), c_t, v)}};
  return d;
}

// Index dichotomy: r is compared with every codimension-one subform of the
// rival, one per possible determinant class.
Json index_data(const DiagonalForm& ambient, const DiagonalForm& rival, const DiagonalForm& r,
                Place v) {
  Json d;
  d["det"] = {{"ambient", class_string(ambient.det(), v)},
              {"rival", class_string(rival.det(), v)},
              {"r", class_string(r.det(), v)}};
  d["hasse"] = {{"ambient", hasse_invariant(ambient, v)},
                {"rival", hasse_invariant(rival, v)},
                {"r", hasse_invariant(r, v)}};
  const auto tr = tits_index(r, v);
  d["tits_r"] = tr.symbol();
  d["split_r"] = tr.split;
  Json rows = Json::array();
  const int c_rival = hasse_invariant(rival, v);
  for (const auto& s : LocalClass::all(v)) {
    const Rational sr(s.representative());
    const int c = c_rival * hilbert_symbol(sr, rival.det() / sr, v);
    const auto t = tits_index_from_invariants(rival.dim() - 1, s, c);
    rows.push_back({{"det", to_string(s.representative())},
                    {"hasse", c},
                    {"tits", t.symbol()},
                    {"split", t.split}});
  }
  d["rival_codim1"] = rows;
  return d;
}

Json real_data(const DiagonalForm& q1, const DiagonalForm& q2, int which,
               const std::vector<std::size_t>& indices, const DiagonalForm& r) {
  const DiagonalForm& other = which == 1 ? q2 : q1;
  Json d;
  d["which"] = which;
  Json idx = Json::array();
  for (auto i : indices) idx.push_back(i);
  d["indices"] = idx;
  d["j"] = r.dim();
  d["signature"] = {{"q1", signature_json(q1.signature())},
                    {"q2", signature_json(q2.signature())},
                    {"r", signature_json(r.signature())}};
  d["r_isotropic"] = r.signature().plus > 0 && r.signature().minus > 0;
  d["fits"] = {{"r", fits(r.signature(), other.signature())},
               {"neg_r", fits(negated(r.signature()), other.signature())}};
  return d;
}

}  // namespace

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::OddCodim1: return "OddCodim1";
    case CertificateKind::EvenCodim1: return "EvenCodim1";
    case CertificateKind::EvenCodim2: return "EvenCodim2";
    case CertificateKind::RealPlace: return "RealPlace";
  }
  return "?";
}

CertificateKind parse_certificate_kind(const std::string& name) {
  for (auto k : {CertificateKind::OddCodim1, CertificateKind::EvenCodim1,
                 CertificateKind::EvenCodim2, CertificateKind::RealPlace}) {
    if (to_string(k) == name) return k;
  }
  fail(ErrorKind::ParseError, "unknown certificate kind '" + name + "'");
}

Json to_json(const SubformCertificate& cert) {
  Json doc;
  doc["kind"] = to_string(cert.kind);
  doc["q1"] = form_json(cert.q1);
  doc["q2"] = form_json(cert.q2);
  doc["r"] = form_json(cert.r);
  doc["v0"] = cert.v0.to_string();
  doc["data"] = cert.data;
  return doc;
}

SubformCertificate certificate_from_json(const Json& doc) {
  auto form = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_array() || doc[key].empty()) {
      fail(ErrorKind::ParseError, std::string("certificate field '") + key + "' must be a non-empty array");
    }
    std::vector<Rational> e;
    for (const auto& x : doc[key]) {
      if (x.is_string()) {
        e.push_back(parse_rational(x.get<std::string>()));
      } else if (x.is_number_integer()) {
        e.emplace_back(x.get<long>());
      } else {
        fail(ErrorKind::ParseError, std::string("entries of '") + key + "' must be rational strings");
      }
    }
    return DiagonalForm(std::move(e));
  };
  if (!doc.is_object()) fail(ErrorKind::ParseError, "certificate must be a JSON object");
  if (!doc.contains("kind") || !doc["kind"].is_string()) {
    fail(ErrorKind::ParseError, "certificate field 'kind' missing");
  }
  if (!doc.contains("v0") || !doc["v0"].is_string()) {
    fail(ErrorKind::ParseError, "certificate field 'v0' missing");
  }
  return SubformCertificate{parse_certificate_kind(doc["kind"].get<std::string>()),
                            form("q1"),
                            form("q2"),
                            form("r"),
                            Place::parse(doc["v0"].get<std::string>()),
                            doc.contains("data") ? doc["data"] : Json::object()};
}

SubformCertificate make_certificate(CertificateKind kind, const DiagonalForm& q1,
                                    const DiagonalForm& q2, const DiagonalForm& r, Place v0) {
  SubformCertificate cert{kind, q1, q2, r, v0, Json::object()};
  switch (kind) {
    case CertificateKind::OddCodim1:
      cert.data = chain_data(q1, q2, r, v0);
      break;
    case CertificateKind::EvenCodim2:
      cert.data = chain_data(q2, q1, r, v0);
      break;
    case CertificateKind::EvenCodim1:
      cert.data = index_data(q1, q2, r, v0);
      break;
    case CertificateKind::RealPlace:
      fail(ErrorKind::PreconditionViolated, "real certificates come from real_distinguishing_subform");
  }
  return cert;
}

bool verify_certificate(const SubformCertificate& cert) {
  try {
    const auto& q1 = cert.q1;
    const auto& q2 = cert.q2;
    const auto& r = cert.r;
    const int m = q1.dim();
    if (q2.dim() != m) return false;

    if (cert.kind == CertificateKind::RealPlace) {
      if (!cert.v0.is_infinite() || !cert.data.is_object()) return false;
      const int which = cert.data.value("which", 0);
      if (which != 1 && which != 2) return false;
      std::vector<std::size_t> idx = cert.data.at("indices").get<std::vector<std::size_t>>();
      const DiagonalForm& ambient = which == 1 ? q1 : q2;
      const DiagonalForm& other = which == 1 ? q2 : q1;
      if (!(delete_entries(ambient, idx) == r)) return false;
      if (cert.data != real_data(q1, q2, which, idx, r)) return false;
      const auto s = r.signature();
      return s.plus > 0 && s.minus > 0 && !fits(s, other.signature()) &&
             !fits(negated(s), other.signature());
    }

    if (!cert.v0.is_finite()) return false;
    const Place v = cert.v0;
    if (cert.kind == CertificateKind::EvenCodim1) {
      if (m % 2 != 0 || m < 4 || r.dim() != m - 1) return false;
      if (!is_subform(r, q1)) return false;
      if (cert.data != index_data(q1, q2, r, v)) return false;
      const bool split_r = tits_index(r, v).split;
      for (const auto& s : LocalClass::all(v)) {
        const Rational sr(s.representative());
        const int c = hasse_invariant(q2, v) * hilbert_symbol(sr, q2.det() / sr, v);
        if (tits_index_from_invariants(m - 1, s, c).split == split_r) return false;
      }
      return true;
    }

    const bool odd = cert.kind == CertificateKind::OddCodim1;
    const DiagonalForm& ambient = odd ? q1 : q2;
    const DiagonalForm& rival = odd ? q2 : q1;
    const int codim = odd ? 1 : 2;
    if (odd ? (m % 2 != 1 || m < 3) : (m % 2 != 0 || m < 4)) return false;
    if (r.dim() != m - codim) return false;
    if (!is_subform(r, ambient)) return false;
    if (cert.data != chain_data(ambient, rival, r, v)) return false;
    // Even-dimensional r with square discriminant keeps its determinant and
    // Hasse invariant under every local similarity.
    if (!is_local_square(r.disc(), v)) return false;
    const Rational det_t = rival.det() / r.det();
    const int c_t = hasse_invariant(rival, v) * hasse_invariant(r, v) * hilbert_symbol(r.det(), det_t, v);
    return !local_form_exists(codim, LocalClass::of(det_t, v), c_t, v);
  } catch (const std::exception&) {
    return false;
  }
}

// ---------------------------------------------------------------------------

RealWitness real_distinguishing_subform(const DiagonalForm& q1, const DiagonalForm& q2, int j) {
  if (q1.dim() != q2.dim()) fail(ErrorKind::DimensionMismatch, "forms of different dimension");
  const int m = q1.dim();
  const auto [l1, o1] = order_form(q1);
  const auto [l2, o2] = order_form(q2);
  const auto s1 = o1.signature();
  const auto s2 = o2.signature();
  if (s1 == s2) fail(ErrorKind::NotApplicable, "signatures are similar over R");
  // a: the ordered form with more positive entries.
  const bool first_large = s1.plus > s2.plus;
  const int a_idx = first_large ? 1 : 2;
  const int b_idx = first_large ? 2 : 1;
  const Signature sa = first_large ? s1 : s2;
  const Signature sb = first_large ? s2 : s1;
  const DiagonalForm& qa = first_large ? q1 : q2;
  const DiagonalForm& qb = first_large ? q2 : q1;
  const int la = first_large ? l1 : l2;
  const int lb = first_large ? l2 : l1;

  auto pick = [](const DiagonalForm& q, int lambda, int want_sign, int count, bool from_end) {
    std::vector<std::size_t> idx;
    const int d = q.dim();
    for (int k = 0; k < d && static_cast<int>(idx.size()) < count; ++k) {
      const int i = from_end ? d - 1 - k : k;
      if (lambda * sgn(q[i]) == want_sign) idx.push_back(static_cast<std::size_t>(i));
    }
    std::sort(idx.begin(), idx.end());
    return idx;
  };

  RealWitness w{0, {}, SubformCertificate{CertificateKind::RealPlace, q1, q2, q1, Place::infinity(), Json::object()}};
  if (sa.minus + sb.minus < j && j < m) {
    w.which = b_idx;
    w.indices = pick(qb, lb, 1, m - j, false);
  } else if (sa.minus > 0 && sa.plus < j && j < m) {
    w.which = a_idx;
    w.indices = pick(qa, la, -1, m - j, true);
  } else {
    fail(ErrorKind::NotApplicable, "j = " + std::to_string(j) + " is outside both real ranges");
  }
  const DiagonalForm& ambient = w.which == 1 ? q1 : q2;
  w.certificate.r = delete_entries(ambient, w.indices);
  w.certificate.data = real_data(q1, q2, w.which, w.indices, w.certificate.r);
  return w;
}

namespace {

struct Shape {
  int dim;
  Signature signature;
};

// r of dimension dim r with det s and c_v(r) = c_v(q) (s, det q / s)_v for
// every v; complement t of the given entries.
DiagonalForm realize_inside(const DiagonalForm& q, const Integer& s, Shape shape,
                            const DiagonalForm& t) {
  const Rational sr(s);
  const Rational rest = q.det() / sr;
  std::set<Place> places;
  for (const auto& v : q.support()) places.insert(v);
  for (const auto& v : candidate_places({sr})) places.insert(v);
  SynthesisProfile p;
  p.dim = shape.dim;
  p.det = squarefree_part(sr);
  p.signature = shape.signature;
  for (const auto& v : places) {
    if (v.is_finite() && hasse_invariant(q, v) * hilbert_symbol(sr, rest, v) == -1) {
      p.minus_set.push_back(v);
    }
  }
  const auto r = synthesize_form(p);
  if (!globally_isometric(direct_sum(r, t), q)) {
    fail(ErrorKind::SearchExhausted, "assembled " + r.to_string() + " does not complete to " + q.to_string());
  }
  return r;
}

void common_hypotheses(const DiagonalForm& q1, const DiagonalForm& q2, Place v0) {
  if (q1.dim() != q2.dim()) violated("forms of different dimension");
  if (!v0.is_finite()) violated("v0 must be a finite place");
  if (!ordered(q1) || !ordered(q2)) violated("forms must be ordered at inf");
  if (!(q1.signature() == q2.signature())) violated("forms must be isometric at inf");
}

}  // namespace

SubformWitness distinguishing_subform_odd(const DiagonalForm& q1, const DiagonalForm& q2, Place v0) {
  common_hypotheses(q1, q2, v0);
  const int m = q1.dim();
  if (m % 2 == 0 || m < 5) violated("needs odd dimension at least 5");
  if (!is_local_square(q1.det(), v0) || !is_local_square(q2.det(), v0)) {
    violated("determinants must be squares at " + v0.to_string());
  }
  if (hasse_invariant(q1, v0) == hasse_invariant(q2, v0)) {
    violated("Hasse invariants agree at " + v0.to_string());
  }
  const long n = (m - 1) / 2;
  const Integer s = square_existence({LocalClass::of(power_sign(-1, n), v0),
                                      LocalClass{Place::infinity(), false, sgn(q1.det())}});
  const DiagonalForm t({Rational(squarefree_part(q1.det() / Rational(s)).as_integer())});
  const auto sig = q1.signature();
  const auto r = realize_inside(q1, s, {m - 1, {sig.plus - 1, sig.minus}}, t);
  return {r, t, make_certificate(CertificateKind::OddCodim1, q1, q2, r, v0)};
}

SubformWitness distinguishing_subform_even_codim1(const DiagonalForm& q1, const DiagonalForm& q2,
                                                  Place v0) {
  common_hypotheses(q1, q2, v0);
  const int m = q1.dim();
  if (m % 2 != 0 || m < 4) violated("needs even dimension at least 4");
  if (!is_local_square(q1.disc(), v0) || !is_local_square(q2.disc(), v0)) {
    violated("discriminants must be squares at " + v0.to_string());
  }
  const long n = m / 2;
  const int split_c = power_sign(hilbert_symbol(-1, -1, v0), n * (n - 1) / 2);
  if (hasse_invariant(q1, v0) != split_c) violated("q1 is not split at " + v0.to_string());
  if (hasse_invariant(q2, v0) == split_c) violated("q2 is split at " + v0.to_string());
  const Integer s = square_existence({LocalClass::of(q1.det(), v0),
                                      LocalClass{Place::infinity(), false, sgn(q1.det())}});
  const DiagonalForm t({Rational(squarefree_part(q1.det() / Rational(s)).as_integer())});
  const auto sig = q1.signature();
  const auto r = realize_inside(q1, s, {m - 1, {sig.plus - 1, sig.minus}}, t);
  return {r, t, make_certificate(CertificateKind::EvenCodim1, q1, q2, r, v0)};
}

SubformWitness distinguishing_subform_even_codim2(const DiagonalForm& q1, const DiagonalForm& q2,
                                                  Place v0) {
  common_hypotheses(q1, q2, v0);
  const int m = q1.dim();
  if (m % 2 != 0 || m < 6) violated("needs even dimension at least 6");
  if (!is_local_square(q1.disc(), v0)) violated("disc q1 must be a square at " + v0.to_string());
  if (is_local_square(q2.disc(), v0)) violated("disc q2 must not be a square at " + v0.to_string());
  const long k = (m - 2) / 2;
  const int rhs = hasse_invariant(q2, v0) * power_sign(hilbert_symbol(-1, q2.disc(), v0), k);
  if (hasse_invariant(q1, v0) == rhs) violated("Hasse condition fails at " + v0.to_string());
  const Integer s = square_existence({LocalClass::of(power_sign(-1, k), v0),
                                      LocalClass{Place::infinity(), false, sgn(q2.det())}});
  const DiagonalForm t({Rational(1), Rational(squarefree_part(q2.det() / Rational(s)).as_integer())});
  const auto sig = q2.signature();
  const auto r = realize_inside(q2, s, {m - 2, {sig.plus - 2, sig.minus}}, t);
  return {r, t, make_certificate(CertificateKind::EvenCodim2, q1, q2, r, v0)};
}

// ---------------------------------------------------------------------------

DiagonalForm transfer_subform(const DiagonalForm& r, const DiagonalForm& q) {
  if (r.dim() >= q.dim() - 2) {
    fail(ErrorKind::PreconditionViolated, "transfer needs codimension at least 3");
  }
  const auto sr = r.signature();
  const auto sq = q.signature();
  if (!fits(sr, sq)) {
    fail(ErrorKind::PreconditionViolated, r.to_string() + " does not fit in the signature of " + q.to_string());
  }
  const Rational det_t = q.det() / r.det();
  SynthesisProfile p;
  p.dim = q.dim() - r.dim();
  p.det = squarefree_part(det_t);
  p.signature = {sq.plus - sr.plus, sq.minus - sr.minus};
  for (const auto& v : union_support({&r, &q})) {
    if (v.is_finite() &&
        hasse_invariant(q, v) * hasse_invariant(r, v) * hilbert_symbol(r.det(), det_t, v) == -1) {
      p.minus_set.push_back(v);
    }
  }
  const auto t = synthesize_form(p);
  if (!globally_isometric(direct_sum(r, t), q)) {
    fail(ErrorKind::SearchExhausted, "complement " + t.to_string() + " does not recompose");
  }
  return t;
}

std::optional<SquareClass> similar_subform_search(const DiagonalForm& r, const DiagonalForm& q) {
  if (r.dim() > q.dim()) fail(ErrorKind::DimensionExceeded, "subform candidate is larger");
  std::vector<std::uint64_t> primes;
  for (const auto& v : union_support({&r, &q})) {
    if (v.is_finite()) primes.push_back(v.p());
  }
  constexpr std::size_t kMaxPrimes = 14;
  if (primes.size() > kMaxPrimes) primes.resize(kMaxPrimes);
  const std::size_t k = primes.size();
  std::vector<std::uint64_t> masks;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    return __builtin_popcountll(a) < __builtin_popcountll(b);
  });
  for (auto mask : masks) {
    Integer prod = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) prod *= static_cast<unsigned long>(primes[i]);
    }
    for (int sign : {1, -1}) {
      const Rational lambda(Integer(sign) * prod);
      if (is_subform(scale(r, lambda), q)) return squarefree_part(lambda);
    }
  }
  return std::nullopt;
}

bool local_similarity_obstruction(const DiagonalForm& r, const DiagonalForm& q, Place v) {
  if (r.dim() > q.dim()) return true;
  for (const auto& a : LocalClass::all(v)) {
    if (local_subform(scale(r, Rational(a.representative())), q, v)) return false;
  }
  return true;
}

}  // namespace qforms
