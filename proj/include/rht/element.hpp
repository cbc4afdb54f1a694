#pragma once

// An element of a free graded-commutative algebra: a finite map from
// monomials to nonzero rational coefficients. Arithmetic keeps the map
// normalized (no zero coefficients, monomials canonical), and the product
// carries Koszul signs through multiplyMonomials.

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "rht/algebra.hpp"
#include "rht/rational.hpp"

namespace rht {

class Element {
 public:
  explicit Element(AlgebraPtr algebra);

  static Element zero(AlgebraPtr algebra) { return Element(std::move(algebra)); }
  static Element unit(AlgebraPtr algebra, Rational coeff = Rational(1));
  static Element fromGenerator(AlgebraPtr algebra, int genId,
                               Rational coeff = Rational(1));
  static Element term(AlgebraPtr algebra, Monomial m, Rational coeff);

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  Rational coefficientOf(const Monomial& m) const;

  // Degree when every monomial has the same cohomological degree; nullopt for
  // zero or mixed elements.
  std::optional<int> homogeneousDegree() const;
  bool isHomogeneousOfDegree(int degree) const;
  int topDegree() const;  // max monomial degree; PreconditionError when zero

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Rational& c);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Rational& c) { return a *= c; }
  friend Element operator*(const Rational& c, Element a) { return a *= c; }
  Element operator-() const;
  friend Element operator*(const Element& a, const Element& b);
  friend bool operator==(const Element& a, const Element& b);

  // Sub-element of the terms satisfying the predicate.
  Element filtered(const std::function<bool(const Monomial&)>& keep) const;
  void addTerm(const Monomial& m, const Rational& c);

  std::string str() const;

 private:
  AlgebraPtr algebra_;
  std::map<Monomial, Rational> terms_;
};

}  // namespace rht
