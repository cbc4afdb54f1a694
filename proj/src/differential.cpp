#include "rht/differential.hpp"

namespace rht {

Differential::Differential(AlgebraPtr algebra, std::map<int, Element> images,
                           bool bigraded)
    : algebra_(std::move(algebra)),
      images_(std::move(images)),
      zero_(algebra_),
      bigraded_(bigraded) {
  if (bigraded_ && !algebra_->lowerGraded())
    throw GradingError("bigraded differential over an ungraded algebra");
  for (auto it = images_.begin(); it != images_.end();) {
    const int id = it->first;
    Element& img = it->second;
    if (id < 0 || id >= algebra_->size())
      throw DomainMismatchError("differential image for unknown generator id " +
                                std::to_string(id));
    requireSameAlgebra(algebra_, img.algebra(), "differential image");
    if (img.isZero()) {
      it = images_.erase(it);
      continue;
    }
    const Generator& g = algebra_->gen(id);
    if (!img.isHomogeneousOfDegree(g.degree + 1))
      throw GradingError("d(" + g.name + ") is not homogeneous of degree " +
                         std::to_string(g.degree + 1));
    if (bigraded_) {
      const int want = *g.lowerDegree - 1;
      for (const auto& [m, c] : img.terms()) {
        (void)c;
        if (lowerDegreeOf(*algebra_, m) != want)
          throw GradingError("d(" + g.name +
                             ") does not lower the second grading by exactly 1");
      }
    }
    ++it;
  }
}

const Element& Differential::image(int genId) const {
  auto it = images_.find(genId);
  return it == images_.end() ? zero_ : it->second;
}

Differential Differential::withAlgebra(AlgebraPtr algebra) const {
  if (!algebra || !algebra->sameAs(*algebra_))
    throw DomainMismatchError("withAlgebra: structurally different algebra");
  std::map<int, Element> imgs;
  for (const auto& [id, img] : images_) {
    Element moved(algebra);
    for (const auto& [m, c] : img.terms()) moved.addTerm(m, c);
    imgs.emplace(id, std::move(moved));
  }
  return Differential(std::move(algebra), std::move(imgs), bigraded_);
}

Element applyDifferential(const Differential& d, const Element& e) {
  requireSameAlgebra(d.algebra(), e.algebra(), "applyDifferential");
  const AlgebraPtr& alg = e.algebra();
  Element out(alg);
  for (const auto& [mono, coeff] : e.terms()) {
    // Graded Leibniz over the factors of the monomial, left to right: the
    // i-th term picks up (-1)^(degree of the prefix before factor i), and
    //   d(g^e) = e g^(e-1) d(g)  for an even generator g.
    int prefixDegree = 0;
    for (size_t i = 0; i < mono.factors().size(); ++i) {
      const auto [id, exp] = mono.factors()[i];
      const Element& dg = d.image(id);
      if (!dg.isZero()) {
        // The term is prefix * d(g) * g^(e-1) * suffix with the explicit
        // Leibniz sign for the prefix; multiplying Elements reintroduces the
        // internal Koszul signs of the reordering.
        Monomial::Factors prefixFactors(
            mono.factors().begin(),
            mono.factors().begin() + static_cast<long>(i));
        Monomial::Factors suffixFactors;
        if (exp > 1) suffixFactors.emplace_back(id, exp - 1);
        for (size_t j = i + 1; j < mono.factors().size(); ++j)
          suffixFactors.push_back(mono.factors()[j]);
        Element prefixEl = Element::term(
            alg, Monomial::fromFactors(*alg, std::move(prefixFactors)),
            Rational(1));
        Element suffixEl = Element::term(
            alg, Monomial::fromFactors(*alg, std::move(suffixFactors)),
            Rational(1));
        const int sign = (prefixDegree % 2 == 0) ? 1 : -1;
        Element piece = prefixEl * dg * suffixEl;
        piece *= coeff * Rational(sign) * Rational(exp);
        out += piece;
      }
      prefixDegree += alg->gen(id).degree * exp;
    }
  }
  return out;
}

DSquaredReport checkDSquared(const Differential& d, int cap) {
  const FreeGCA& alg = *d.algebra();
  int maxDeg = 0;
  for (const auto& g : alg.generators()) maxDeg = std::max(maxDeg, g.degree);
  if (cap < maxDeg + 2)
    throw PreconditionError(
        "checkDSquared: cap must be at least max generator degree + 2 (" +
        std::to_string(maxDeg + 2) + ")");
  DSquaredReport report;
  for (int id = 0; id < alg.size(); ++id) {
    Element dd = applyDifferential(d, d.image(id));
    if (!dd.isZero()) {
      report.ok = false;
      report.generator = id;
      report.residual = std::move(dd);
      return report;
    }
  }
  return report;
}

bool isDecomposable(const Differential& d) {
  for (int id = 0; id < d.algebra()->size(); ++id)
    for (const auto& [m, c] : d.image(id).terms()) {
      (void)c;
      if (wordLengthOf(m) <= 1) return false;
    }
  return true;
}

}  // namespace rht
