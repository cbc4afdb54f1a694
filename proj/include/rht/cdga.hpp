#pragma once

// A commutative differential graded algebra presented as a free
// graded-commutative algebra, an optional homogeneous relation ideal, and a
// differential. Relations make quotient algebras such as H(S^4) = Q[w]/(w^2)
// or H(S^3 v S^5) = Lambda(b3,b5)/(b3 b5) first-class CDGAs, so pushed-out
// fibrations over (H, 0) bases use the same machinery as free models.
//
// All quotient computations are degreewise linear algebra: the ideal slice in
// degree k is the span of (relation * monomial) products, and normal forms
// are taken against its reduced echelon basis. No Groebner machinery.

#include <vector>

#include "rht/differential.hpp"
#include "rht/element.hpp"

namespace rht {

struct Cdga {
  AlgebraPtr algebra;
  std::vector<Element> relations;
  Differential differential;

  static Cdga free(AlgebraPtr algebra, Differential d) {
    return Cdga{algebra, {}, std::move(d)};
  }
  // (H, 0): a quotient algebra with the zero differential.
  static Cdga formal(AlgebraPtr algebra, std::vector<Element> relations) {
    Differential d = Differential::zero(algebra);
    return Cdga{std::move(algebra), std::move(relations), std::move(d)};
  }
  bool hasRelations() const { return !relations.empty(); }
};

// Validates structural consistency: relations over the same algebra,
// homogeneous of degree >= 1, nonzero. (Differential stability of the ideal
// is checked where windows are built, since it needs normal forms.)
void validateCdga(const Cdga& c);

}  // namespace rht
