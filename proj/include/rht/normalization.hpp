#pragma once

// Normal forms for KS-extensions over formal bases. Three constructive
// reductions, each returning the reduced extension together with the basis
// change that realizes it:
//
//   * normalizeOverOddSphere: over a single odd-sphere base Lambda(u), the
//     image of every even fiber generator is reduced to u * (decomposable
//     polynomial part), D(V^even) <= u * Lambda^+(V^even). The correction for
//     an even generator is u * eta with d_F(eta) equal to the positive-lower
//     part of D(v)/u; since u^2 = 0 the corrections never interact, so one
//     simultaneous substitution suffices.
//
//   * trivializeOverOddWedge: over a formal base (H, 0) with H concentrated
//     in odd degrees and H^+ . H^+ = 0, a TNCZ extension with positively
//     elliptic pure fiber is brought to the product differential exactly.
//     Generators are processed one at a time along the KS order; the residue
//     of each is split along the base classes b_i, every component is solved
//     in the fiber (evens through the total window, odds through
//     H^+(fiber) = 0), and the substitution is b_i-linear because squares of
//     base classes vanish.
//
//   * filteredNormalize: over any formal base (zero differential, relations
//     allowed) with pure fiber and TNCZ, even fiber generators are made
//     closed and odd fiber generators get images inside H(B) (x) (Lambda V)_0,
//     i.e. with no odd fiber factor. The output differential is rebuilt with
//     the bigraded flag set (it lowers the odd-fiber word count by one).
//
// All three require the degree-ascending KS order, reject out-of-class inputs
// with PreconditionError, and treat a failed interior solve as
// TheoryViolationError: on certified inputs the solves are guaranteed, so a
// failure falsifies the certificate or the code, never the caller.
//
// formalityCertificateOfTotal consumes a filtered (bigraded) extension and
// produces the quasi-isomorphism onto the formal CDGA
// H(B) (x) Lambda(V_0) / (images of V_1), verified degreewise through the
// cap, together with the vanishing of all positive-lower cohomology of the
// filtered total on the same window.

#include <optional>

#include "rht/cohomology.hpp"
#include "rht/ks_extension.hpp"
#include "rht/pure_model.hpp"

namespace rht {

struct NormalizedExtension {
  KSExtension extension;
  // changeBasis(input, change) agrees with `extension` up to normal forms
  // modulo the base relation ideal (images are stored fully reduced).
  BasisChange change;
};

// `cap` widens the window of the fiber ellipticity certificate (default: the
// fiber's formal dimension).
NormalizedExtension normalizeOverOddSphere(const KSExtension& ext,
                                           std::optional<int> cap = std::nullopt);

// `cap` is passed through to the TNCZ verification (default: the fiber's
// formal dimension, checkTNCZ's own choice).
NormalizedExtension trivializeOverOddWedge(const KSExtension& ext,
                                           std::optional<int> cap = std::nullopt);

NormalizedExtension filteredNormalize(const KSExtension& ext,
                                      std::optional<int> cap = std::nullopt);

struct FormalityCertificate {
  // Quasi-isomorphism from the filtered total onto its cohomology, presented
  // as the formal quotient CDGA (base generators and even fiber generators,
  // modulo the base relations and the odd-generator images).
  DGMorphism morphism;
  int verifiedCap = 0;
};

// Requires a bigraded total differential (the filteredNormalize output
// shape). `cap` bounds the verification window (default: max generator
// degree + 2). A quasi-isomorphism failure or surviving positive-lower
// cohomology throws TheoryViolationError: both are impossible for extensions
// in the certified class.
FormalityCertificate formalityCertificateOfTotal(const KSExtension& ext,
                                                 std::optional<int> cap = std::nullopt);

// The bigraded projection of a positively elliptic pure model onto its
// cohomology Lambda(V_0) / (images of V_1), verified as a quasi-isomorphism
// together with the positive-lower vanishing, exactly as for totals above.
// Rejects models that are not positively elliptic with PreconditionError:
// for those (already for an odd sphere) the projection is not even a chain
// map onto the right algebra. Default cap: formal dimension + 2.
FormalityCertificate formalityCertificateOfPure(const PureModel& model,
                                                std::optional<int> cap = std::nullopt);

// The identity on a CDGA with zero differential, packaged as a certificate
// (such a CDGA is its own cohomology). Rejects nonzero differentials with
// PreconditionError; those need one of the real reductions first.
FormalityCertificate selfCertificate(const Cdga& formal, int cap);

// Certifies the fiber of an extension as a positively elliptic pure model
// (PreconditionError otherwise), returning that model over its own algebra.
// `cap` widens the Euler-characteristic window (default: formal dimension).
PureModel certifyPositivelyEllipticFiber(const KSExtension& ext,
                                         std::optional<int> cap = std::nullopt);

// True when the CDGA is the cohomology of a wedge of odd-dimensional spheres
// presented formally: zero differential, every generator of odd degree, and
// all pairwise generator products vanishing modulo the relations.
bool isOddWedgeBase(const Cdga& base);

}  // namespace rht
