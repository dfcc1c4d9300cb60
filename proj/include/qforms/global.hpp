#pragma once

// Global decision procedures over Q and the synthesis of forms from local data.

#include <functional>
#include <optional>
#include <vector>

#include "qforms/arith.hpp"
#include "qforms/form.hpp"

namespace qforms {

bool globally_isometric(const DiagonalForm& q1, const DiagonalForm& q2);

struct IsotropyResult {
  bool isotropic = false;
  /// A rational zero, when the bounded search found one (dim <= 6 only).
  std::optional<std::vector<Rational>> witness;
};

IsotropyResult globally_isotropic(const DiagonalForm& q);

/// Default candidate bound for the square-class searches. Overridden by the
/// environment variable QFORMS_SEARCH_BOUND.
inline constexpr long kDefaultSearchBound = 1'000'000;
long search_bound();

/// A signed squarefree integer lying in every prescribed local class (at most
/// one per place). Throws PreconditionViolated on duplicate places and
/// SearchExhausted past the bound.
Integer square_existence(const std::vector<LocalClass>& constraints);

/// As square_existence, keeping only candidates accepted by `accept`.
Integer square_existence_if(const std::vector<LocalClass>& constraints,
                            const std::function<bool(const Integer&)>& accept);

/// Some a with (a, b)_v = -1 exactly for v in `ramified`, and with the given
/// sign when one is requested. Throws SearchExhausted.
Integer find_with_symbols(const Rational& b, const std::vector<Place>& ramified,
                          std::optional<int> sign = std::nullopt);

struct SynthesisProfile {
  int dim = 0;
  SquareClass det;
  Signature signature;
  /// Finite places with c = -1.
  std::vector<Place> minus_set;
};

/// Profile data of an existing form.
SynthesisProfile synthesis_profile(const DiagonalForm& q);

/// Throws InvalidProfile with the reason when the data cannot be realized.
void validate_profile(const SynthesisProfile& profile);

/// A form realizing the profile exactly. Throws InvalidProfile or SearchExhausted.
DiagonalForm synthesize_form(const SynthesisProfile& profile);

/// Throws DimensionExceeded.
bool is_subform(const DiagonalForm& r, const DiagonalForm& q);

/// A class lambda with lambda*q1 isometric to q2, if any.
std::optional<SquareClass> similar(const DiagonalForm& q1, const DiagonalForm& q2);

enum class IsogroupyVerdict { Yes, No, UnknownEvenDim };

struct Isogroupy {
  IsogroupyVerdict verdict = IsogroupyVerdict::No;
  std::optional<SquareClass> lambda;
};

Isogroupy isogroupic(const DiagonalForm& q1, const DiagonalForm& q2);

}  // namespace qforms
