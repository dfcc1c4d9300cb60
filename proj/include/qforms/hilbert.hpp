#pragma once

// Hilbert symbols over R and Q_p.

#include <vector>

#include "qforms/arith.hpp"

namespace qforms {

/// (a, b)_v in {+1, -1}. Throws ZeroInput.
int hilbert_symbol(const Rational& a, const Rational& b, Place v);

/// Symbol on local square classes (same place required).
int hilbert_symbol(const LocalClass& a, const LocalClass& b);

/// Places where (a, b)_v = -1, ascending (real place first).
std::vector<Place> hilbert_support(const Rational& a, const Rational& b);

/// {inf, 2} together with the odd primes dividing any of xs.
std::vector<Place> candidate_places(const std::vector<Rational>& xs);

/// Some b with (a, b)_v = -1, taken from the canonical class
/// representatives at v. Throws IsSquare if a is a local square.
Rational nonsquare_partner(const Rational& a, Place v);

}  // namespace qforms
