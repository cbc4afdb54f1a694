#pragma once

// Degreewise cohomology windows over a CDGA, exact over the rationals.
//
// A Window holds, for every degree up to its cap: the free monomial slice,
// the relation-ideal slice in reduced echelon form, the quotient basis (the
// non-pivot monomials), the differential matrix in quotient coordinates, and
// the cocycle/coboundary/class bases. Class representatives are cocycles
// reduced modulo coboundaries with pivots in canonical monomial order, so
// every basis this type exposes is deterministic.

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "rht/cdga.hpp"
#include "rht/linalg.hpp"
#include "rht/rational.hpp"

namespace rht {

using RMat = linalg::Mat<Rational>;
using RVec = linalg::Vec<Rational>;

// Restrictions on the slice searched by solveExact. The predicate (when set)
// is applied to quotient-basis monomials.
struct SliceConstraints {
  std::optional<int> minWordLength;
  std::optional<int> lowerDegree;
  std::function<bool(const FreeGCA&, const Monomial&)> keep;
};

class Window {
 public:
  // Builds quotient and cohomology data for degrees 0..cap (slices internally
  // extend to cap+1 so cocycles at the cap are exact, not truncated).
  // Also verifies that the relation ideal is differential-stable within the
  // window, so the quotient differential is well-defined.
  Window(Cdga cdga, int cap);

  const Cdga& cdga() const { return cdga_; }
  const AlgebraPtr& algebra() const { return cdga_.algebra; }
  int cap() const { return cap_; }

  // -- quotient algebra structure ------------------------------------------
  const std::vector<Monomial>& quotientBasis(int degree) const;
  int quotientDim(int degree) const;
  // Normal-form coordinates of a homogeneous element on quotientBasis(degree).
  RVec coordinates(const Element& e, int degree) const;
  Element elementFrom(const RVec& coords, int degree) const;
  // Normal form of an arbitrary element with all terms of degree <= cap+1.
  Element normalForm(const Element& e) const;

  // -- differential and cohomology -----------------------------------------
  // d: quotient(degree) -> quotient(degree+1), for degree <= cap.
  const RMat& dMatrix(int degree) const;
  const RMat& cocycles(int degree) const;      // columns, degree <= cap
  const RMat& coboundaries(int degree) const;  // columns, degree <= cap
  const RMat& classes(int degree) const;       // columns, degree <= cap
  int betti(int degree) const;
  std::vector<Element> classRepresentatives(int degree) const;
  bool isCocycle(const Element& e) const;
  // Coordinates of a cocycle's class on classes(degree); throws if not a
  // cocycle of that degree.
  RVec classCoordinates(const Element& cocycle, int degree) const;

  // First eta (in canonical basis order, free coordinates zero) with
  // d(eta) = target and eta supported on constraint-allowed quotient basis
  // monomials; nullopt when no solution exists in the constrained slice.
  // Requires target to be a cocycle of some degree <= cap+1.
  std::optional<Element> solveExact(const Element& target,
                                    const SliceConstraints& c = {}) const;

 private:
  struct DegreeData {
    std::vector<Monomial> freeSlice;
    std::map<Monomial, int> freeIndex;
    linalg::Echelon<Rational> idealEchelon;
    std::vector<int> basisFreeIdx;      // indices of quotient basis monomials
    std::vector<Monomial> basis;
    RMat d;                              // into degree+1, quotient coords
    RMat cocycleCols, coboundaryCols, classCols;
    linalg::Echelon<Rational> coboundaryEch;
    bool cohomologyReady = false;
  };

  const DegreeData& at(int degree) const;
  RVec freeVector(const Element& e, int degree) const;

  Cdga cdga_;
  int cap_;
  std::vector<DegreeData> deg_;
};

// A degree-0 algebra morphism commuting with the differentials, given by
// generator images. Images live over the target's free algebra; comparisons
// are made modulo the target's relation ideal.
class DGMorphism {
 public:
  DGMorphism(Cdga source, Cdga target, std::map<int, Element> images);

  const Cdga& source() const { return source_; }
  const Cdga& target() const { return target_; }
  const Element& image(int genId) const;

  // Multiplicative extension (free, not reduced).
  Element apply(const Element& e) const;

 private:
  Cdga source_, target_;
  std::map<int, Element> images_;
  Element zero_;
};

struct ChainMapReport {
  bool ok = true;
  int generator = -1;  // first source generator violating d phi = phi d
};
// Verified modulo the target ideal within the window needed by the images.
ChainMapReport checkChainMap(const DGMorphism& phi, int cap);

struct QuasiIsoReport {
  bool ok = false;
  bool chainMap = false;
  int chainMapGenerator = -1;
  int firstFailingDegree = -1;  // -1 when ok
  std::string reason;           // empty when ok
  int verifiedCap = 0;
};
QuasiIsoReport isQuasiIso(const DGMorphism& phi, int cap);

}  // namespace rht
