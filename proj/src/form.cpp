#include "qforms/form.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "qforms/error.hpp"
#include "qforms/hilbert.hpp"

namespace qforms {

DiagonalForm::DiagonalForm(std::vector<Rational> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) fail(ErrorKind::EmptyResult, "a form needs at least one entry");
  for (auto& a : entries_) {
    if (a == 0) fail(ErrorKind::ZeroInput, "zero entry in a diagonal form");
    a.canonicalize();
  }
  support_ = candidate_places(entries_);
}

DiagonalForm::DiagonalForm(std::initializer_list<long> entries)
    : DiagonalForm([&] {
        std::vector<Rational> v;
        for (long a : entries) v.emplace_back(a);
        return v;
      }()) {}

DiagonalForm DiagonalForm::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t' && c != '\n') s.push_back(c);
  }
  if (s.size() >= 2 && ((s.front() == '<' && s.back() == '>') ||
                        (s.front() == '[' && s.back() == ']'))) {
    s = s.substr(1, s.size() - 2);
  }
  if (s.empty()) fail(ErrorKind::ParseError, "empty form");
  std::vector<Rational> entries;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    const std::string piece = s.substr(start, comma == std::string::npos ? comma : comma - start);
    Rational a;
    try {
      a = parse_rational(piece);
    } catch (const Error& e) {
      fail(ErrorKind::ParseError, "entry " + std::to_string(entries.size()) + " (offset " +
                                      std::to_string(start) + "): " + e.what());
    }
    if (a == 0) {
      fail(ErrorKind::ParseError, "entry " + std::to_string(entries.size()) + " is zero");
    }
    entries.push_back(a);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return DiagonalForm(std::move(entries));
}

Rational DiagonalForm::det() const {
  Rational d = 1;
  for (const auto& a : entries_) d *= a;
  return d;
}

SquareClass DiagonalForm::det_class() const { return squarefree_part(det()); }

Rational DiagonalForm::disc() const {
  const long m = dim();
  return ((m * (m - 1) / 2) % 2 == 0) ? det() : Rational(-det());
}

SquareClass DiagonalForm::disc_class() const { return squarefree_part(disc()); }

Signature DiagonalForm::signature() const {
  Signature s;
  for (const auto& a : entries_) (sgn(a) > 0 ? s.plus : s.minus)++;
  return s;
}

std::string DiagonalForm::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ",";
    out += qforms::to_string(entries_[i]);
  }
  return out + ">";
}

std::vector<Place> union_support(std::initializer_list<const DiagonalForm*> forms) {
  std::set<Place> all;
  for (const auto* q : forms) all.insert(q->support().begin(), q->support().end());
  return {all.begin(), all.end()};
}

// ---------------------------------------------------------------------------

int hasse_invariant(const DiagonalForm& q, Place v) {
  int c = 1;
  Rational prefix = q[0];
  for (int j = 1; j < q.dim(); ++j) {
    c *= hilbert_symbol(prefix, q[j], v);
    prefix *= q[j];
  }
  return c;
}

InvariantProfile global_invariants(const DiagonalForm& q) {
  InvariantProfile p;
  p.dim = q.dim();
  p.det = q.det_class();
  p.disc = q.disc_class();
  p.signature = q.signature();
  for (const auto& v : q.support()) {
    if (hasse_invariant(q, v) == -1) p.hasse[v] = -1;
  }
  return p;
}

namespace {

int pow_sign(int base, long e) { return (e % 2 == 0) ? 1 : base; }

int eps_hw_from(const DiagonalForm& q, Place v, int c) {
  const long m = q.dim();
  const int h = hilbert_symbol(-1, -1, v);
  if (m % 2 == 0) {
    const long n = m / 2;
    return c * pow_sign(h, n * (n - 1) / 2);
  }
  const long n = (m - 1) / 2;
  return c * pow_sign(h, n * (n - 3) / 2) * pow_sign(hilbert_symbol(-1, q.det(), v), n);
}

}  // namespace

HasseVariants hasse_variants(const DiagonalForm& q, Place v) {
  HasseVariants out;
  out.c = hasse_invariant(q, v);
  out.c_om = out.c * hilbert_symbol(-1, q.det(), v);
  if (q.dim() >= 4) out.eps_hw = eps_hw_from(q, v, out.c);
  return out;
}

int hasse_eps_hw(const DiagonalForm& q, Place v) {
  if (q.dim() < 4) {
    fail(ErrorKind::DimensionTooSmall, "the split normalization needs dimension at least 4");
  }
  return eps_hw_from(q, v, hasse_invariant(q, v));
}

// ---------------------------------------------------------------------------

DiagonalForm scale(const DiagonalForm& q, const Rational& lambda) {
  if (lambda == 0) fail(ErrorKind::ZeroScalar, "cannot scale by zero");
  std::vector<Rational> e;
  e.reserve(q.entries().size());
  for (const auto& a : q.entries()) e.push_back(a * lambda);
  return DiagonalForm(std::move(e));
}

DiagonalForm direct_sum(const DiagonalForm& q1, const DiagonalForm& q2) {
  std::vector<Rational> e = q1.entries();
  e.insert(e.end(), q2.entries().begin(), q2.entries().end());
  return DiagonalForm(std::move(e));
}

DiagonalForm delete_entries(const DiagonalForm& q, const std::vector<std::size_t>& idx) {
  std::vector<bool> drop(q.entries().size(), false);
  for (auto i : idx) {
    if (i >= drop.size()) {
      fail(ErrorKind::PreconditionViolated, "index " + std::to_string(i) + " out of range");
    }
    drop[i] = true;
  }
  std::vector<Rational> e;
  for (std::size_t i = 0; i < drop.size(); ++i) {
    if (!drop[i]) e.push_back(q[i]);
  }
  if (e.empty()) fail(ErrorKind::EmptyResult, "every entry deleted");
  return DiagonalForm(std::move(e));
}

namespace {

std::vector<Rational> gram_schmidt(std::vector<std::vector<Rational>> g) {
  const std::size_t m = g.size();
  std::vector<Rational> diag;
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t piv = k;
    while (piv < m && g[piv][piv] == 0) ++piv;
    if (piv == m) {
      // All remaining diagonal entries vanish: replace e_i by e_i + e_j for some
      // nonzero off-diagonal g_ij, making g_ii = 2 g_ij.
      std::size_t i = m, j = m;
      for (std::size_t a = k; a < m && i == m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
          if (g[a][b] != 0) {
            i = a;
            j = b;
            break;
          }
        }
      }
      if (i == m) fail(ErrorKind::ZeroInput, "degenerate Gram matrix");
      for (std::size_t c = 0; c < m; ++c) g[i][c] += g[j][c];
      for (std::size_t r = 0; r < m; ++r) g[r][i] += g[r][j];
      piv = i;
    }
    if (piv != k) {
      std::swap(g[piv], g[k]);
      for (auto& row : g) std::swap(row[piv], row[k]);
    }
    const Rational p = g[k][k];
    for (std::size_t r = k + 1; r < m; ++r) {
      if (g[r][k] == 0) continue;
      const Rational f = g[r][k] / p;
      for (std::size_t c = k; c < m; ++c) g[r][c] -= f * g[k][c];
      for (std::size_t c = k; c < m; ++c) g[c][r] = g[r][c];
    }
    diag.push_back(p);
  }
  return diag;
}

}  // namespace

DiagonalForm diagonalize_gram(std::vector<std::vector<Rational>> gram) {
  return DiagonalForm(gram_schmidt(std::move(gram)));
}

namespace {

bool fits_64(const Integer& x) { return mpz_sizeinbase(x.get_mpz_t(), 2) <= 63; }

// One random unimodular change: a permutation followed by `moves` elementary
// row operations with coefficient +-1.
std::vector<Rational> random_change(const DiagonalForm& q, std::mt19937_64& rng, std::size_t moves) {
  const std::size_t m = q.entries().size();
  std::vector<std::vector<long>> u(m, std::vector<long>(m, 0));
  std::vector<std::size_t> perm(m);
  for (std::size_t i = 0; i < m; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 0; i < m; ++i) u[i][perm[i]] = 1;
  if (m > 1) {
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    std::uniform_int_distribution<int> coeff(0, 1);
    for (std::size_t t = 0; t < moves; ++t) {
      const std::size_t i = pick(rng);
      std::size_t j = pick(rng);
      if (i == j) j = (j + 1) % m;
      const long k = coeff(rng) ? 1 : -1;
      for (std::size_t c = 0; c < m; ++c) u[i][c] += k * u[j][c];
    }
  }
  std::vector<std::vector<Rational>> g(m, std::vector<Rational>(m, 0));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = r; c < m; ++c) {
      Rational s = 0;
      for (std::size_t l = 0; l < m; ++l) {
        if (u[r][l] != 0 && u[c][l] != 0) s += q[l] * (u[r][l] * u[c][l]);
      }
      g[r][c] = s;
      g[c][r] = s;
    }
  }
  return gram_schmidt(std::move(g));
}

}  // namespace

// Pivots whose numerators or denominators leave 63 bits are rejected so that
// factoring stays cheap; later attempts use fewer moves, and a bare
// permutation always qualifies.
DiagonalForm rediagonalize(const DiagonalForm& q, std::uint64_t seed) {
  const std::size_t m = q.entries().size();
  std::mt19937_64 rng(seed);
  const std::size_t schedule[] = {m + 1, m + 1, m + 1, m, m, m / 2 + 1, m / 2 + 1, 2, 2, 1, 1, 1};
  for (const std::size_t moves : schedule) {
    auto d = random_change(q, rng, moves);
    const bool small = std::all_of(d.begin(), d.end(), [](const Rational& x) {
      return fits_64(x.get_num()) && fits_64(x.get_den());
    });
    if (small) return DiagonalForm(std::move(d));
  }
  return DiagonalForm(random_change(q, rng, 0));
}

std::pair<int, DiagonalForm> order_form(const DiagonalForm& q) {
  const auto s = q.signature();
  if (s.plus >= s.minus) return {1, q};
  return {-1, scale(q, -1)};
}

Rational evaluate(const DiagonalForm& q, const std::vector<Rational>& x) {
  if (x.size() != q.entries().size()) {
    fail(ErrorKind::DimensionMismatch, "vector length differs from the form dimension");
  }
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += q[i] * x[i] * x[i];
  return s;
}

}  // namespace qforms
