#pragma once

// Distinguishing subforms and replayable non-representability certificates.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qforms/arith.hpp"
#include "qforms/form.hpp"

namespace qforms {

using Json = nlohmann::ordered_json;

enum class CertificateKind { OddCodim1, EvenCodim1, EvenCodim2, RealPlace };

std::string to_string(CertificateKind kind);
/// Throws ParseError on an unknown name.
CertificateKind parse_certificate_kind(const std::string& name);

/// The claim: no form isogroupic to r is a subform of the rival form.
/// OddCodim1 and EvenCodim1 take r inside q1 with q2 as rival; EvenCodim2
/// takes r inside q2 with q1 as rival. RealPlace names the ambient in data.
struct SubformCertificate {
  CertificateKind kind;
  DiagonalForm q1;
  DiagonalForm q2;
  DiagonalForm r;
  Place v0;
  /// Local quantities recomputable from the forms above.
  Json data;
};

Json to_json(const SubformCertificate& cert);
/// Throws ParseError on malformed input.
SubformCertificate certificate_from_json(const Json& doc);

/// Records the local data for a given r. The result verifies only when the
/// claim actually holds.
SubformCertificate make_certificate(CertificateKind kind, const DiagonalForm& q1,
                                    const DiagonalForm& q2, const DiagonalForm& r, Place v0);

/// Replays the contradiction from scratch. Never throws.
bool verify_certificate(const SubformCertificate& cert);

struct RealWitness {
  int which = 1;
  std::vector<std::size_t> indices;
  SubformCertificate certificate;
};

/// A j-dimensional deletion of one form, isotropic over R, such that neither
/// it nor its negative fits in the other form's signature. Throws
/// NotApplicable and DimensionMismatch.
RealWitness real_distinguishing_subform(const DiagonalForm& q1, const DiagonalForm& q2, int j);

struct SubformWitness {
  DiagonalForm r;
  /// r + t is isometric to the ambient form.
  DiagonalForm t;
  SubformCertificate certificate;
};

/// Codimension 1 in odd dimension. Throws HypothesesViolated.
SubformWitness distinguishing_subform_odd(const DiagonalForm& q1, const DiagonalForm& q2, Place v0);
/// Codimension 1 in even dimension; q1 split and q2 not at v0.
SubformWitness distinguishing_subform_even_codim1(const DiagonalForm& q1, const DiagonalForm& q2,
                                                  Place v0);
/// Codimension 2 in even dimension; r is a subform of q2.
SubformWitness distinguishing_subform_even_codim2(const DiagonalForm& q1, const DiagonalForm& q2,
                                                  Place v0);

/// A complement t with r + t isometric to q. Needs dim r < dim q - 2 and r
/// fitting in the signature of q. Throws PreconditionViolated, SearchExhausted.
DiagonalForm transfer_subform(const DiagonalForm& r, const DiagonalForm& q);

/// lambda among +-products of support primes with lambda*r a subform of q.
/// Incomplete: a miss proves nothing.
std::optional<SquareClass> similar_subform_search(const DiagonalForm& r, const DiagonalForm& q);

/// No lambda*r with lambda in Q_v^x embeds in q over Q_v.
bool local_similarity_obstruction(const DiagonalForm& r, const DiagonalForm& q, Place v);

}  // namespace qforms
