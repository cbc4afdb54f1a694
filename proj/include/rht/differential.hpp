#pragma once

// Degree +1 differentials on a free graded-commutative algebra, defined by
// generator images and extended by the graded Leibniz rule
//   d(ab) = d(a) b + (-1)^{|a|} a d(b).
// An optional bigraded flag asserts that d lowers the second grading by
// exactly 1 (the pure-model convention).

#include <map>
#include <optional>

#include "rht/element.hpp"

namespace rht {

class Differential {
 public:
  // Validates each image: same algebra, homogeneous of degree deg(g)+1 (zero
  // images may simply be omitted from the map), and -- when bigraded -- of
  // lower degree lower(g) - 1.
  Differential(AlgebraPtr algebra, std::map<int, Element> images,
               bool bigraded = false);

  static Differential zero(AlgebraPtr algebra) {
    return Differential(std::move(algebra), {});
  }

  const AlgebraPtr& algebra() const { return algebra_; }
  const Element& image(int genId) const;
  const std::map<int, Element>& images() const { return images_; }
  bool bigraded() const { return bigraded_; }
  bool isZero() const { return images_.empty(); }

  // Rebinds the same generator images onto a structurally identical algebra
  // instance (used when re-assembling composite objects).
  Differential withAlgebra(AlgebraPtr algebra) const;

 private:
  AlgebraPtr algebra_;
  std::map<int, Element> images_;
  Element zero_;
  bool bigraded_;
};

Element applyDifferential(const Differential& d, const Element& e);

// d^2 = 0 holds iff it holds on every generator (Leibniz). The check itself
// is exact and symbolic; `cap` is the declared working window and must cover
// max generator degree + 2 so every potential failure lies inside it.
struct DSquaredReport {
  bool ok = true;
  int generator = -1;                // id of the first failing generator
  std::optional<Element> residual;   // d(d(generator)), set on failure
};

DSquaredReport checkDSquared(const Differential& d, int cap);

// True when no generator image contains a word-length-1 monomial. Models with
// a linear part (non-minimal presentations) make filtration invariants
// presentation-dependent, which callers must flag.
bool isDecomposable(const Differential& d);

}  // namespace rht
