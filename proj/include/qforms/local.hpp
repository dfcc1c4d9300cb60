#pragma once

// Decision procedures over a single completion Q_v.

#include <optional>
#include <string>

#include "qforms/arith.hpp"
#include "qforms/form.hpp"

namespace qforms {

/// (dim, det class, Hasse) at a finite place; (dim, signature) at inf.
struct LocalInvariants {
  Place place;
  int dim = 0;
  LocalClass det;
  int hasse = 1;
  std::optional<Signature> signature;

  friend bool operator==(const LocalInvariants&, const LocalInvariants&) = default;
};

LocalInvariants local_invariants(const DiagonalForm& q, Place v);

bool local_isometric(const DiagonalForm& q1, const DiagonalForm& q2, Place v);
bool local_isotropic(const DiagonalForm& q, Place v);
int local_witt_index(const DiagonalForm& q, Place v);

/// Whether a form over Q_p with these invariants exists (finite v only).
bool local_form_exists(int dim, const LocalClass& det, int c, Place v);

/// Isotropy and Witt index read off (dim, det, c) at a finite place.
bool isotropic_from_invariants(int dim, const LocalClass& det, int c);
int witt_index_from_invariants(int dim, const LocalClass& det, int c);

/// Whether q_v = r_v + t_v for some t_v. Throws DimensionExceeded.
bool local_subform(const DiagonalForm& r, const DiagonalForm& q, Place v);

enum class TitsFamily { B, DInner, DOuter };

struct TitsIndex {
  TitsFamily family = TitsFamily::B;
  int n = 0;
  int witt_index = 0;
  bool split = false;

  /// B_{n,r}, 1D_{n,r} or 2D_{n,r}.
  std::string symbol() const;

  friend bool operator==(const TitsIndex&, const TitsIndex&) = default;
};

/// Throws DimensionTooSmall below dimension 3.
TitsIndex tits_index(const DiagonalForm& q, Place v);

/// The index at a finite place from (dim, det, c); dim >= 3.
TitsIndex tits_index_from_invariants(int dim, const LocalClass& det, int c);

}  // namespace qforms
