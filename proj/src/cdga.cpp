#include "rht/cdga.hpp"

namespace rht {

void validateCdga(const Cdga& c) {
  if (!c.algebra) throw PreconditionError("CDGA without an algebra");
  requireSameAlgebra(c.algebra, c.differential.algebra(), "CDGA differential");
  for (const Element& r : c.relations) {
    requireSameAlgebra(c.algebra, r.algebra(), "CDGA relation");
    if (r.isZero()) throw PreconditionError("zero relation in a CDGA");
    const auto deg = r.homogeneousDegree();
    if (!deg)
      throw GradingError("relation " + r.str() +
                         " is not homogeneous; quotient CDGAs require "
                         "weighted-homogeneous relations");
    if (*deg < 1) throw GradingError("relation of degree 0");
  }
}

}  // namespace rht
