#pragma once

// KS-extensions B -> B (x) Lambda(V) -> Lambda(V): the algebraic models of
// fibrations. The total CDGA lives on the combined algebra (base generators
// at lower degree 0, fiber generators at their parity), relations are the
// base's, and the well-ordered fiber basis makes the defining condition
//     D(v_alpha) in B (x) Lambda(V_{< alpha})
// checkable generator by generator. The fiber model is always derived from
// the total by projecting away the base-positive ideal, so it cannot drift
// out of sync with D.
//
// Basis changes phi(v_alpha) = v_alpha + eta_alpha with eta_alpha in
// B+ (x) Lambda(V_{< alpha}) are triangular, hence invertible by
// back-substitution along the well-order; changeBasis conjugates the
// differential and post-validates everything it claims.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rht/cdga.hpp"
#include "rht/cohomology.hpp"
#include "rht/differential.hpp"

namespace rht {

struct KSExtension {
  Cdga base;
  Cdga total;
  std::vector<int> fiberOrder;  // total-algebra gen ids in KS order
  std::vector<int> baseIds;     // total-algebra gen ids of base generators

  bool isFiberGen(int totalId) const;
  // Position of a fiber generator in the KS order; -1 for base generators.
  int ksPosition(int totalId) const;
  // The fiber CDGA Lambda(V) with the projected differential, over its own
  // pure-split algebra.
  Cdga fiberModel() const;
  AlgebraPtr fiberAlgebra() const;
};

// Builds the combined algebra and differential. Fiber images are supplied by
// name over the total algebra (missing names map to zero); base generators
// take their images from the base differential. The KS order defaults to
// (degree ascending, declaration order of fiberGens); ksOrder, when given,
// lists fiber generator names in the desired order instead.
KSExtension makeKSExtension(
    const Cdga& base, std::vector<Generator> fiberGens,
    const std::function<std::map<std::string, Element>(const AlgebraPtr&)>&
        fiberImages,
    const std::vector<std::string>& ksOrder = {});

// Remaps a fiber-algebra element into the total algebra (by name).
Element liftFiberElement(const KSExtension& ext, const Element& fiberElt);
// Drops every monomial containing a base generator. The result still lives
// over the total algebra; fiberModel() remaps it onto the fiber algebra.
Element projectToFiber(const KSExtension& ext, const Element& totalElt);
// Remaps a base-algebra element into the total algebra (by name).
Element liftBaseElement(const KSExtension& ext, const Element& baseElt);

struct ExtensionReport {
  bool ok = true;
  int generator = -1;   // first offending total-algebra generator id
  std::string failure;  // human-readable description
};

// Verifies D|_B = d_B, the KS condition along the well-order, and D^2 = 0.
// Never throws for content reasons: the verdict carries failures.
ExtensionReport validate(const KSExtension& ext);

// Literal syntactic purity: every even fiber generator closed, every odd
// fiber image free of odd fiber factors. Requires the lower grading.
bool checkPure(const KSExtension& ext);

struct TNCZReport {
  bool tncz = true;
  int failingDegree = -1;
  // A fiber cohomology class with no preimage, over the fiber algebra.
  std::optional<Element> missingFiberClass;
  std::string reason;
  int verifiedCap = 0;
};

// Computes the map induced by the projection q on class representatives and
// decides degreewise surjectivity through the cap (default: the fiber's
// formal dimension). The fiber window is extended one generator
// degree beyond the cap and must vanish there, so the finite check is
// conclusive for genuinely elliptic fibers.
TNCZReport checkTNCZ(const KSExtension& ext,
                     std::optional<int> capOverride = std::nullopt);

struct BasisChange {
  // fiber generator id (total algebra) -> eta in B+ (x) Lambda(V_{< alpha})
  std::map<int, Element> substitutions;
  bool empty() const { return substitutions.empty(); }
};

// Throws PreconditionError on degree mismatches, missing base-positive
// factors, substitutions of base generators, or fiber factors at or after
// the substituted generator in the KS order.
void validateBasisChange(const KSExtension& ext, const BasisChange& bc);

// The extension with differential phi^{-1} D phi for phi(v) = v + eta_v.
// Post-validates the result and checks the fiber differential is unchanged.
KSExtension changeBasis(const KSExtension& ext, const BasisChange& bc);

// Substitutions of phi^{-1}: applying the result after bc restores the
// original differential exactly.
BasisChange inverseBasisChange(const KSExtension& ext, const BasisChange& bc);

// A single change equivalent to applying `first`, then `second`.
BasisChange composeBasisChanges(const KSExtension& ext, const BasisChange& first,
                                const BasisChange& second);

struct PushoutResult {
  KSExtension extension;
  bool baseQuasiIso = false;  // verified only when requested
  int verifiedCap = -1;
};

// The extension over phi's target with the pushed-forward differential; the
// fiber model is unchanged. phi must be a chain map from the current base.
// With requireQuasiIso, isQuasiIso(phi) is verified (through `cap` when
// given) and recorded, certifying the two totals are quasi-isomorphic.
PushoutResult pushout(const KSExtension& ext, const DGMorphism& phi,
                      bool requireQuasiIso = false,
                      std::optional<int> cap = std::nullopt);

}  // namespace rht
