#pragma once

// Presentations of evenly generated algebras Q[x1..xn]/(R1..Rn): degreewise
// quotient bases and regularity certificates.
//
// Homogeneous relations get exact degreewise ideal slices (spans of
// relation-times-monomial products, which generate each graded piece), and
// regularity is decided against the candidate Hilbert series
//     prod_j (1 - t^{|Rj|}) / prod_i (1 - t^{|xi|})
// compared through formal dimension + max |xi|. Matching that far forces the
// quotient dimensions to vanish on a window wider than every generator
// degree, which propagates upward (every higher monomial is a generator
// multiple of a window monomial), so the quotient is finite-dimensional; n
// relations cutting the n-variable polynomial ring down to dimension zero
// form a regular sequence, and conversely a regular sequence realizes the
// candidate series exactly. A first differing degree is therefore a witness
// of non-regularity.
//
// Non-homogeneous relations are handled by filtered elimination: rows are
// relation-times-monomial products capped by top degree, pivoting on leading
// monomials in a multiplication-compatible order. The surviving monomials
// bound the quotient from above, so a vanishing tail still certifies
// regularity ("up to cap"), while a non-vanishing tail is inconclusive.

#include <optional>
#include <vector>

#include "rht/algebra.hpp"
#include "rht/element.hpp"

namespace rht {

class Presentation {
 public:
  // Validates: at least one generator, all of even degree; relations nonzero,
  // over the same algebra, with top degree at least twice the smallest
  // generator degree (a relation below that bound could eliminate a
  // generator, which a presentation of a free-over-nothing quotient never
  // needs). Relation count is unrestricted here; maximal-sequence claims are
  // checked where they matter (regularityCertificate).
  Presentation(AlgebraPtr algebra, std::vector<Element> relations);

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<Element>& relations() const { return relations_; }
  bool homogeneous() const { return homogeneous_; }
  int generatorCount() const { return algebra_->size(); }
  int relationCount() const { return static_cast<int>(relations_.size()); }
  int relationDegree(int j) const;  // top degree
  int minGeneratorDegree() const;
  int maxGeneratorDegree() const;

 private:
  AlgebraPtr algebra_;
  std::vector<Element> relations_;
  bool homogeneous_ = true;
};

struct GradedBasis {
  int cap = 0;
  // True on the non-homogeneous path: slices are complements of leading
  // monomials, hence upper bounds for the filtration quotients.
  bool filtered = false;
  std::vector<std::vector<Monomial>> byDegree;  // size cap+1
  std::vector<int> dims;                        // size cap+1
  long long totalDim = 0;
};

GradedBasis quotientBasis(const Presentation& p, int cap);

enum class RegularityStatus { Regular, NotRegular, Inconclusive };

struct RegularityCertificate {
  RegularityStatus status = RegularityStatus::Inconclusive;
  int formalDimension = -1;  // Regular verdicts
  int witnessDegree = -1;    // NotRegular verdicts: first dimension mismatch
  int cap = 0;               // window actually inspected
  bool homogeneous = true;
  bool certifiedUpToCap = false;   // set on non-homogeneous Regular verdicts
  std::vector<long long> expectedDims;  // homogeneous path only
  std::vector<int> actualDims;
  long long totalDimension = -1;  // Regular verdicts: dim of the quotient
};

// Requires |relations| == |generators| (the maximal-sequence claim).
// Homogeneous presentations derive their own window and ignore userCap unless
// it is larger; non-homogeneous ones require a userCap and can only ever be
// certified up to it.
RegularityCertificate regularityCertificate(
    const Presentation& p, std::optional<int> userCap = std::nullopt);

}  // namespace rht
