#include "rht/element.hpp"

#include <sstream>

namespace rht {

Element::Element(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
  if (!algebra_) throw PreconditionError("element over a null algebra");
}

Element Element::unit(AlgebraPtr algebra, Rational coeff) {
  Element e(std::move(algebra));
  e.addTerm(Monomial(), coeff);
  return e;
}

Element Element::fromGenerator(AlgebraPtr algebra, int genId, Rational coeff) {
  Element e(std::move(algebra));
  Monomial m = Monomial::fromFactors(*e.algebra_, {{genId, 1}});
  e.addTerm(m, coeff);
  return e;
}

Element Element::term(AlgebraPtr algebra, Monomial m, Rational coeff) {
  Element e(std::move(algebra));
  e.addTerm(m, coeff);
  return e;
}

Rational Element::coefficientOf(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> Element::homogeneousDegree() const {
  std::optional<int> deg;
  for (const auto& [m, c] : terms_) {
    (void)c;
    const int d = degreeOf(*algebra_, m);
    if (!deg)
      deg = d;
    else if (*deg != d)
      return std::nullopt;
  }
  return deg;
}

bool Element::isHomogeneousOfDegree(int degree) const {
  if (isZero()) return true;
  const auto d = homogeneousDegree();
  return d && *d == degree;
}

int Element::topDegree() const {
  if (isZero()) throw PreconditionError("topDegree of the zero element");
  int top = 0;
  for (const auto& [m, c] : terms_) {
    (void)c;
    top = std::max(top, degreeOf(*algebra_, m));
  }
  return top;
}

void Element::addTerm(const Monomial& m, const Rational& c) {
  if (c.isZero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& o) {
  requireSameAlgebra(algebra_, o.algebra_, "element addition");
  for (const auto& [m, c] : o.terms_) addTerm(m, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  requireSameAlgebra(algebra_, o.algebra_, "element subtraction");
  for (const auto& [m, c] : o.terms_) addTerm(m, -c);
  return *this;
}

Element& Element::operator*=(const Rational& c) {
  if (c.isZero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) {
    (void)m;
    coeff *= c;
  }
  return *this;
}

Element Element::operator-() const {
  Element e(algebra_);
  for (const auto& [m, c] : terms_) e.terms_.emplace(m, -c);
  return e;
}

Element operator*(const Element& a, const Element& b) {
  requireSameAlgebra(a.algebra_, b.algebra_, "element multiplication");
  Element out(a.algebra_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      const auto prod = multiplyMonomials(*a.algebra_, ma, mb);
      if (!prod) continue;  // an odd generator squared
      out.addTerm(prod->monomial, ca * cb * Rational(prod->sign));
    }
  return out;
}

bool operator==(const Element& a, const Element& b) {
  requireSameAlgebra(a.algebra_, b.algebra_, "element comparison");
  return a.terms_ == b.terms_;
}

Element Element::filtered(const std::function<bool(const Monomial&)>& keep) const {
  Element out(algebra_);
  for (const auto& [m, c] : terms_)
    if (keep(m)) out.terms_.emplace(m, c);
  return out;
}

std::string Element::str() const {
  if (isZero()) return "0";
  // Render terms in graded-lex order: degree ascending, then intrinsic order.
  std::vector<const std::pair<const Monomial, Rational>*> sorted;
  for (const auto& t : terms_) sorted.push_back(&t);
  std::stable_sort(sorted.begin(), sorted.end(), [&](auto* x, auto* y) {
    return degreeOf(*algebra_, x->first) < degreeOf(*algebra_, y->first);
  });
  std::ostringstream os;
  bool first = true;
  for (const auto* t : sorted) {
    const std::string c = t->second.str();
    if (!first) os << (c.front() == '-' ? " - " : " + ");
    const std::string mag = (c.front() == '-' && !first) ? c.substr(1) : c;
    first = false;
    if (t->first.isUnit())
      os << mag;
    else if (mag == "1")
      os << toString(*algebra_, t->first);
    else if (mag == "-1")
      os << "-" << toString(*algebra_, t->first);
    else
      os << mag << "*" << toString(*algebra_, t->first);
  }
  return os.str();
}

}  // namespace rht
