#include "qforms/local.hpp"

#include "qforms/error.hpp"
#include "qforms/hilbert.hpp"

namespace qforms {

namespace {

LocalClass class_of(long x, Place v) { return LocalClass::of(Rational(x), v); }

int sym(const LocalClass& a, const LocalClass& b) { return hilbert_symbol(a, b); }

LocalClass neg(const LocalClass& d) { return class_of(-1, d.place) * d; }

int minus_one_minus_one(Place v) { return hilbert_symbol(-1, -1, v); }

}  // namespace

LocalInvariants local_invariants(const DiagonalForm& q, Place v) {
  LocalInvariants out;
  out.place = v;
  out.dim = q.dim();
  out.det = LocalClass::of(q.det(), v);
  out.hasse = hasse_invariant(q, v);
  if (v.is_infinite()) out.signature = q.signature();
  return out;
}

bool local_isometric(const DiagonalForm& q1, const DiagonalForm& q2, Place v) {
  if (q1.dim() != q2.dim()) return false;
  if (v.is_infinite()) return q1.signature() == q2.signature();
  return LocalClass::of(q1.det(), v) == LocalClass::of(q2.det(), v) &&
         hasse_invariant(q1, v) == hasse_invariant(q2, v);
}

bool isotropic_from_invariants(int dim, const LocalClass& det, int c) {
  const Place v = det.place;
  switch (dim) {
    case 1:
      return false;
    case 2:
      return neg(det).is_square();
    case 3:
      return c == sym(class_of(-1, v), neg(det));
    case 4: {
      const bool disc_one = det.is_square();  // disc = det for m = 4
      return !(disc_one && c == -minus_one_minus_one(v));
    }
    default:
      return true;
  }
}

int witt_index_from_invariants(int dim, const LocalClass& det, int c) {
  int w = 0;
  LocalClass d = det;
  while (dim >= 2 && isotropic_from_invariants(dim, d, c)) {
    ++w;
    dim -= 2;
    d = neg(d);
    c *= sym(class_of(-1, d.place), d);
  }
  return w;
}

bool local_isotropic(const DiagonalForm& q, Place v) {
  if (v.is_infinite()) {
    const auto s = q.signature();
    return s.plus > 0 && s.minus > 0;
  }
  return isotropic_from_invariants(q.dim(), LocalClass::of(q.det(), v), hasse_invariant(q, v));
}

int local_witt_index(const DiagonalForm& q, Place v) {
  if (v.is_infinite()) {
    const auto s = q.signature();
    return std::min(s.plus, s.minus);
  }
  return witt_index_from_invariants(q.dim(), LocalClass::of(q.det(), v), hasse_invariant(q, v));
}

bool local_form_exists(int dim, const LocalClass& det, int c, Place v) {
  if (v.is_infinite()) {
    fail(ErrorKind::PreconditionViolated, "local existence is decided at finite places");
  }
  if (dim < 1) fail(ErrorKind::DimensionTooSmall, "dimension must be positive");
  if (c == 1) return true;
  if (dim == 1) return false;
  if (dim == 2 && neg(det).is_square()) return false;
  return true;
}

bool local_subform(const DiagonalForm& r, const DiagonalForm& q, Place v) {
  if (r.dim() > q.dim()) {
    fail(ErrorKind::DimensionExceeded, "subform candidate is larger than the ambient form");
  }
  if (v.is_infinite()) {
    const auto sr = r.signature();
    const auto sq = q.signature();
    return sr.plus <= sq.plus && sr.minus <= sq.minus;
  }
  const int t_dim = q.dim() - r.dim();
  if (t_dim == 0) return local_isometric(r, q, v);
  const Rational det_t = q.det() / r.det();
  const LocalClass det_t_class = LocalClass::of(det_t, v);
  const int c_t = hasse_invariant(q, v) * hasse_invariant(r, v) * hilbert_symbol(r.det(), det_t, v);
  if (!local_form_exists(t_dim, det_t_class, c_t, v)) return false;
  if (t_dim > 2) return true;
  // Realize t explicitly and compare r + t with q.
  if (t_dim == 1) return local_isometric(direct_sum(r, DiagonalForm({det_t})), q, v);
  for (const auto& a : LocalClass::all(v)) {
    const Rational x(a.representative());
    const DiagonalForm t({x, x * det_t});
    if (hasse_invariant(t, v) != c_t) continue;
    return local_isometric(direct_sum(r, t), q, v);
  }
  return false;
}

// ---------------------------------------------------------------------------

std::string TitsIndex::symbol() const {
  std::string prefix;
  switch (family) {
    case TitsFamily::B: prefix = "B"; break;
    case TitsFamily::DInner: prefix = "1D"; break;
    case TitsFamily::DOuter: prefix = "2D"; break;
  }
  return prefix + "_{" + std::to_string(n) + "," + std::to_string(witt_index) + "}";
}

TitsIndex tits_index_from_invariants(int dim, const LocalClass& det, int c) {
  const Place v = det.place;
  if (dim < 3) fail(ErrorKind::DimensionTooSmall, "Tits index needs dimension at least 3");
  TitsIndex t;
  const int h = minus_one_minus_one(v);
  auto power = [](int base, long e) { return (e % 2 == 0) ? 1 : base; };
  if (dim % 2 == 1) {
    const long n = (dim - 1) / 2;
    t.family = TitsFamily::B;
    t.n = static_cast<int>(n);
    const int target = power(h, n * (n - 3) / 2) * power(sym(class_of(-1, v), det), n);
    t.split = (c == target);
    t.witt_index = t.split ? t.n : t.n - 1;
    return t;
  }
  const long n = dim / 2;
  t.n = static_cast<int>(n);
  const LocalClass disc = (n % 2 == 0) ? det : neg(det);
  if (!disc.is_square()) {
    t.family = TitsFamily::DOuter;
    t.witt_index = t.n - 1;
    t.split = false;
    return t;
  }
  t.family = TitsFamily::DInner;
  t.split = (c == power(h, n * (n - 1) / 2));
  t.witt_index = t.split ? t.n : t.n - 2;
  return t;
}

TitsIndex tits_index(const DiagonalForm& q, Place v) {
  if (q.dim() < 3) fail(ErrorKind::DimensionTooSmall, "Tits index needs dimension at least 3");
  if (v.is_finite()) {
    return tits_index_from_invariants(q.dim(), LocalClass::of(q.det(), v), hasse_invariant(q, v));
  }
  TitsIndex t;
  const int m = q.dim();
  t.n = m / 2;
  t.witt_index = local_witt_index(q, v);
  if (m % 2 == 1) {
    t.family = TitsFamily::B;
  } else {
    t.family = sgn(q.disc()) > 0 ? TitsFamily::DInner : TitsFamily::DOuter;
  }
  t.split = (t.witt_index == t.n);
  return t;
}

}  // namespace qforms
