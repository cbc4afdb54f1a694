#pragma once

// Rational LS-category approximations over exact degree windows.
//
//   * cupLength: nilpotency of the cohomology algebra (cup_0), the largest n
//     with a nonzero n-fold product of positive-degree classes.
//
//   * toomer: the word-length filtration invariant (e_0) of a free model,
//     the largest n such that some nonzero class is represented by a cocycle
//     of word length at least n. On a minimal model this is the Toomer
//     invariant of the space; the report says whether minimality held.
//
//   * nil0: the common value of cup_0 = e_0 = cat_0 = cl_0 on a space with a
//     formality certificate, computed as the cup length of the certified
//     cohomology and optionally cross-checked against an independently
//     computed Toomer value.
//
//   * cl0UpperViaAcyclicQuotient: a cone-length upper bound for the total
//     space of an extension of a positively elliptic pure fiber over a wedge
//     of odd spheres. The kernel of the projection onto H(B) (x) H(F) is an
//     acyclic differential ideal; the quotient is a formal CDGA whose
//     nilpotency bounds cl_0 from above. Every step ships inside the result
//     as an exact certificate: degreewise kernel/boundary ranks of the
//     ideal, the short-exact dimension counts, and the quasi-isomorphism
//     verdict for the projection.
//
//   * checkFibrationInequalities: given invariant reports for the total
//     space, base, and fiber of one fibration plus the verified structural
//     context (TNCZ, base formal, base an odd wedge, fiber positively
//     elliptic), evaluates the applicable lower bounds and collapse
//     identities and returns one verdict per rule.
//
// The chain cup_0 <= e_0 <= cat_0 <= cl_0 is enforced wherever two of its
// members meet in one report; a violation is a bug, never a result, and
// throws TheoryViolationError.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rht/cohomology.hpp"
#include "rht/ks_extension.hpp"
#include "rht/normalization.hpp"

namespace rht {

// Largest n with a nonzero n-fold product of positive classes in the window.
// The window must have stabilized: the top two degrees must carry no
// cohomology (PreconditionError otherwise), so a product escaping past the
// cap cannot be mistaken for zero. Pick cap >= top degree + 2.
int cupLength(const Window& H);

struct ToomerReport {
  int value = 0;
  // True when the differential is decomposable, i.e. the model is minimal.
  // Otherwise the value is the filtration invariant of this particular free
  // model and only an upper-bound-flavored stand-in for the space's e_0.
  bool minimalModel = false;
};

// Word-length filtration invariant of a free model. Requires a CDGA without
// relations (word length is not well defined on a quotient presentation) and
// a stabilized window exactly as cupLength does.
ToomerReport toomer(const Window& H);
ToomerReport toomer(const Cdga& model, int cap);

// Cup length of the certified cohomology (the certificate's target), which
// is the common value of all four invariants on a formal space. When
// crossCheck carries an independently computed Toomer value, disagreement
// throws TheoryViolationError: it would contradict the formality collapse on
// the instance. Default cap: the certificate's own verified cap.
int nil0(const FormalityCertificate& cert,
         std::optional<int> crossCheck = std::nullopt,
         std::optional<int> cap = std::nullopt);

// One degree of the acyclicity certificate for the kernel ideal: the ideal
// slice dimension splits as kernel rank plus image rank of the differential,
// the kernel rank equals the boundary rank from one degree below (exactness
// away from degree zero), and ideal + quotient dimensions add up to the
// total slice (the projection is onto with the ideal as exact kernel).
struct DegreeExactness {
  int degree = 0;
  int idealDim = 0;
  // Verified for 0 < degree < cap; -1 marks the unverified window edge.
  int kernelRank = -1;
  int boundaryRank = -1;
  int quotientDim = 0;
  int totalDim = 0;
};

struct AcyclicIdealQuotient {
  // Degreewise basis of the ideal H(B) (x) ker(rho) inside the total CDGA,
  // each element in normal form modulo the base relations.
  std::map<int, std::vector<Element>> idealSlices;
  // The formal quotient: base and even fiber generators modulo the base
  // relations and the fiber images of the odd generators.
  Cdga quotient;
  DGMorphism projection;  // verified quasi-isomorphism onto `quotient`
  // Cup length of the quotient; an upper bound for cl_0 of the total space.
  int nilpotencyLength = 0;
  int verifiedCap = 0;
  std::vector<DegreeExactness> acyclicityCertificate;
};

// The acyclic-quotient cone-length bound. Preconditions (PreconditionError):
// the base is a formal wedge of odd spheres, the fiber is positively
// elliptic and pure, and every even fiber generator is closed in the total
// (take trivializeOverOddWedge or filteredNormalize first). The odd-generator
// images may twist across the base; the base-direction derivations they
// define are extracted, checked to commute with the fiber differential, and
// used to verify that the ideal is stable and acyclic degree by degree.
// Any failed interior verification throws TheoryViolationError. Default cap:
// max base degree + fiber formal dimension + 2.
AcyclicIdealQuotient cl0UpperViaAcyclicQuotient(
    const KSExtension& ext, std::optional<int> cap = std::nullopt);

struct ProvenanceEntry {
  std::string invariant;
  int value = 0;
  std::string rule;  // how the value was obtained, in words
};

// One space's invariants. cup0 and e0 are always present; nil0 and cat0 only
// when a formality certificate pinned them; cl0Upper only when an acyclic
// quotient (or other bound) supplied it. Invariants on the fields:
// cup0 <= e0; nil0 set implies cup0 == e0 == nil0 == cat0; cl0Upper set
// implies e0 <= cl0Upper.
struct InvariantReport {
  int cup0 = 0;
  int e0 = 0;
  std::optional<int> nil0;
  std::optional<int> cat0;
  std::optional<int> cl0Upper;
  std::vector<ProvenanceEntry> provenance;
};

// Report for a free model: cup length and Toomer value on one window; when a
// certificate for the same space is supplied, nil0/cat0 are pinned and the
// certified value is cross-checked against the Toomer value.
InvariantReport invariantReport(const Cdga& freeModel, int cap,
                                const FormalityCertificate* cert = nullptr);

// Report for a formal CDGA (zero differential, relations allowed): all four
// invariants collapse to the cup length; e_0 is cross-checked against the
// word filtration whenever the model is also free.
InvariantReport invariantReportOfFormal(const Cdga& formalModel, int cap);

// Report for a model certified formal by `cert` (any mix of relations and
// differential). A relation-free model delegates to invariantReport with the
// certificate; otherwise the word filtration is unavailable and e_0 and
// cat_0 are pinned to the certified value, with the cup length of the model
// itself as the independent cross-check.
InvariantReport invariantReportOfCertified(const Cdga& model, int cap,
                                           const FormalityCertificate& cert);

// Attaches the cone-length bound to a report, enforcing e0 <= cl0Upper.
void attachConeLengthBound(InvariantReport& report,
                           const AcyclicIdealQuotient& bound);

// What has been *verified* about the fibration, not merely hoped: feed each
// flag from the checker that established it.
struct FibrationContext {
  bool tncz = false;
  bool baseFormal = false;
  bool baseOddWedge = false;
  bool fiberPositivelyElliptic = false;
};

struct InequalityVerdict {
  std::string rule;
  bool applicable = false;  // the context satisfies the rule's hypotheses
  bool holds = false;       // the numbers satisfy the rule (when applicable)
  std::string detail;       // the instantiated inequality, in numbers
};

// Evaluates the fibration inequalities on the three reports under the given
// context: additivity of nil0 over a formal base, the cup-length and Toomer
// lower bounds over a TNCZ fibration, the Toomer lower bound and the nil and
// cone-length collapse identities over a wedge of odd spheres. Returns one
// verdict per rule, inapplicable rules included with applicable = false.
// A rule whose hypotheses hold but whose required fields are missing from a
// report throws PreconditionError naming the gap.
std::vector<InequalityVerdict> checkFibrationInequalities(
    const InvariantReport& total, const InvariantReport& base,
    const InvariantReport& fiber, const FibrationContext& context);

}  // namespace rht
