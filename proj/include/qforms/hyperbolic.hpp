#pragma once

// Standard arithmetic hyperbolic orbifolds over Q: commensurability, subspace
// comparisons and the Maclachlan parametrization.

#include <cstdint>
#include <optional>
#include <vector>

#include "qforms/form.hpp"
#include "qforms/subform.hpp"

namespace qforms {

/// Signature (m-1, 1) or (1, m-1). Throws DimensionTooSmall below 3.
bool is_admissible(const DiagonalForm& q);

/// Similarity of two admissible forms. Throws NotAdmissible, DimensionTooSmall.
bool commensurable(const DiagonalForm& q1, const DiagonalForm& q2);

/// Forms rescaled and relabeled so that the construction for `kind` applies
/// at v0 with (q1, q2) in this order.
struct Distinction {
  Place v0;
  CertificateKind kind;
  DiagonalForm q1;
  DiagonalForm q2;
  bool swapped = false;
};

/// Empty when the forms are commensurable. Throws NotComparable,
/// NotAdmissible.
std::optional<Distinction> normalize_for_distinction(const DiagonalForm& q1, const DiagonalForm& q2);

std::optional<Place> distinguishing_place(const DiagonalForm& q1, const DiagonalForm& q2);

struct DichotomyReport {
  bool dims_equal = false;
  bool commensurable = false;
  /// Subspace dimensions j with lo <= j <= hi shared by both; empty if lo > hi.
  int shared_lo = 2;
  int shared_hi = 1;
  std::optional<SubformCertificate> codim1_witness;
  std::optional<SubformCertificate> codim2_witness;
};

/// Throws NotAdmissible, DimensionTooSmall.
DichotomyReport dichotomy_report(const DiagonalForm& q1, const DiagonalForm& q2);

enum class Containment { Yes, No, InconclusiveCodimLE2 };

struct ContainmentResult {
  Containment verdict = Containment::InconclusiveCodimLE2;
  /// Scalar of a similar subform, when one was found.
  std::optional<SquareClass> lambda;
  /// Place of a local obstruction behind a No.
  std::optional<Place> obstruction;
};

/// Throws NotAdmissible, DimensionOrder.
ContainmentResult contains_as_subspace(const DiagonalForm& q1, const DiagonalForm& q2);

/// Number of dyadic places of Q where (-1,-1) ramifies.
inline constexpr int kDeltaQ = 1;

bool maclachlan_parity_ok(long n, long r);

/// Proof quantities: non-split (e) and c = -1 (f) counts over the finite
/// places where (-1,-1) splits (s) or ramifies (r).
struct MaclachlanAudit {
  int e_s = 0;
  int e_r = 0;
  int f_s = 0;
  int f_r = 0;
  bool consistent = false;
};

struct MaclachlanClass {
  int n = 0;
  std::vector<std::uint64_t> primes;
  std::optional<DiagonalForm> witness;
  std::optional<MaclachlanAudit> audit;
};

/// Throws NotAdmissible, EvenDimension.
MaclachlanClass maclachlan_form_to_primes(const DiagonalForm& q);

/// det 1, signature (1, 2n), non-split exactly at `primes`. Throws
/// ParityViolation, NotPrime, SearchExhausted.
DiagonalForm maclachlan_primes_to_form(int n, const std::vector<std::uint64_t>& primes);

/// Every parity-valid prime set below the bound, by size then
/// lexicographically, each with a witness.
std::vector<MaclachlanClass> maclachlan_enumerate(int n, std::uint64_t prime_bound);

}  // namespace qforms
