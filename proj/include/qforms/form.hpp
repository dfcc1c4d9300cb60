#pragma once

// Diagonal quadratic forms over Q and their classical invariants.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qforms/arith.hpp"

namespace qforms {

struct Signature {
  int plus = 0;
  int minus = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// <a_1, ..., a_m> with every a_i nonzero and m >= 1.
class DiagonalForm {
 public:
  /// Throws ZeroInput on a zero entry, EmptyResult on an empty list.
  explicit DiagonalForm(std::vector<Rational> entries);
  DiagonalForm(std::initializer_list<long> entries);

  /// "1,1,-5" or "1/2,3" (brackets optional). Throws ParseError.
  static DiagonalForm parse(std::string_view text);

  const std::vector<Rational>& entries() const noexcept { return entries_; }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }
  int dim() const noexcept { return static_cast<int>(entries_.size()); }

  /// Product of the entries (an honest rational, not a class).
  Rational det() const;
  SquareClass det_class() const;
  /// (-1)^{m(m-1)/2} det.
  Rational disc() const;
  SquareClass disc_class() const;
  Signature signature() const;

  /// {inf, 2} and every odd prime dividing some entry, ascending.
  const std::vector<Place>& support() const noexcept { return support_; }

  /// "<1,1,-5>"
  std::string to_string() const;

  friend bool operator==(const DiagonalForm& a, const DiagonalForm& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Rational> entries_;
  std::vector<Place> support_;
};

/// Places in the union of supports of the given forms.
std::vector<Place> union_support(std::initializer_list<const DiagonalForm*> forms);

struct InvariantProfile {
  int dim = 0;
  SquareClass det;
  SquareClass disc;
  Signature signature;
  /// Places where c = -1 (real place included); every other place is +1.
  std::map<Place, int> hasse;

  int hasse_at(Place v) const {
    auto it = hasse.find(v);
    return it == hasse.end() ? 1 : it->second;
  }

  friend bool operator==(const InvariantProfile&, const InvariantProfile&) = default;
};

InvariantProfile global_invariants(const DiagonalForm& q);

/// c_v(q) = prod_{i<j} (a_i, a_j)_v.
int hasse_invariant(const DiagonalForm& q, Place v);

/// Hasse invariant in the three normalizations. eps_hw is empty below dim 4.
struct HasseVariants {
  int c = 1;
  int c_om = 1;
  std::optional<int> eps_hw;
};

HasseVariants hasse_variants(const DiagonalForm& q, Place v);

/// The normalization that is +1 on the split form. Throws DimensionTooSmall
/// when dim q < 4.
int hasse_eps_hw(const DiagonalForm& q, Place v);

/// Throws ZeroScalar.
DiagonalForm scale(const DiagonalForm& q, const Rational& lambda);

DiagonalForm direct_sum(const DiagonalForm& q1, const DiagonalForm& q2);

/// Removes the given 0-based positions. Throws EmptyResult if nothing is left
/// and PreconditionViolated on an out-of-range index.
DiagonalForm delete_entries(const DiagonalForm& q, const std::vector<std::size_t>& idx);

/// Seeded random unimodular change of basis followed by exact Gram-Schmidt.
DiagonalForm rediagonalize(const DiagonalForm& q, std::uint64_t seed);

/// Diagonalizes a symmetric nondegenerate Gram matrix over Q.
DiagonalForm diagonalize_gram(std::vector<std::vector<Rational>> gram);

/// lambda in {+1, -1} with lambda*q ordered (m+ >= m-); ties give +1.
std::pair<int, DiagonalForm> order_form(const DiagonalForm& q);

/// Value sum a_i x_i^2.
Rational evaluate(const DiagonalForm& q, const std::vector<Rational>& x);

}  // namespace qforms
