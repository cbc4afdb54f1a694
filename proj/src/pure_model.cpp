#include "rht/pure_model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "rht/cohomology.hpp"
#include "rht/errors.hpp"
#include "rht/linalg.hpp"

namespace rht {

int PureModel::maxOddDegree() const {
  int m = 0;
  for (int id : oddIds) m = std::max(m, algebra->gen(id).degree);
  return m;
}

namespace {

bool isPolynomialInEvens(const FreeGCA& alg, const Element& e) {
  for (const auto& [mon, coeff] : e.terms()) {
    (void)coeff;
    for (const auto& [id, exp] : mon.factors()) {
      (void)exp;
      if (isOddDegree(alg.gen(id).degree)) return false;
    }
  }
  return true;
}

PureModel assemble(AlgebraPtr algebra, Differential differential,
                   std::optional<Presentation> source) {
  if (algebra->gradingMode() != GradingMode::PureSplit)
    throw PreconditionError("pure model: algebra must use the pure-split grading");
  PureModel m{std::move(algebra), std::move(differential), std::move(source), 0, {}, {}};
  long long sumEven = 0, sumOddPlusOne = 0;
  for (int id = 0; id < m.algebra->size(); ++id) {
    const Generator& g = m.algebra->gen(id);
    if (isOddDegree(g.degree)) {
      m.oddIds.push_back(id);
      sumOddPlusOne += g.degree + 1;
      if (!isPolynomialInEvens(*m.algebra, m.differential.image(id)))
        throw PreconditionError("pure model: d(" + g.name +
                                ") leaves the polynomial part");
    } else {
      m.evenIds.push_back(id);
      sumEven += g.degree;
      if (!m.differential.image(id).isZero())
        throw PreconditionError("pure model: even generator " + g.name +
                                " is not closed");
    }
  }
  m.formalDimension = static_cast<int>(sumOddPlusOne - sumEven);
  return m;
}

}  // namespace

PureModel makePureModel(AlgebraPtr algebra, Differential differential) {
  PureModel m = assemble(std::move(algebra), std::move(differential), std::nullopt);
  // Pure shape implies bigradedness; re-store the differential with the flag
  // on so lower-degree bookkeeping is validated and visible downstream.
  m.differential = Differential(m.algebra, m.differential.images(), /*bigraded=*/true);
  return m;
}

PureModel pureModelFromPresentation(const Presentation& p) {
  if (!p.homogeneous())
    throw PreconditionError(
        "pureModelFromPresentation: homogeneous relations required (a graded "
        "differential cannot absorb mixed-degree images)");
  const RegularityCertificate cert = regularityCertificate(p);
  if (cert.status != RegularityStatus::Regular)
    throw PreconditionError(
        "pureModelFromPresentation: presentation is not certified regular" +
        std::string(cert.status == RegularityStatus::NotRegular
                        ? " (witness degree " +
                              std::to_string(cert.witnessDegree) + ")"
                        : ""));

  // Generators: the x_i keep their names; each relation R_j contributes a
  // y of degree |R_j| - 1 with a degree-tagged name, deduplicated.
  std::vector<Generator> gens;
  std::set<std::string> used;
  for (const auto& g : p.algebra()->generators()) {
    gens.push_back({g.name, g.degree, std::nullopt});
    used.insert(g.name);
  }
  std::vector<std::string> oddNames;
  for (int j = 0; j < p.relationCount(); ++j) {
    const int deg = p.relationDegree(j) - 1;
    std::string base = "y" + std::to_string(deg);
    std::string name = base;
    for (int suffix = 2; used.count(name) != 0; ++suffix)
      name = base + "_" + std::to_string(suffix);
    used.insert(name);
    oddNames.push_back(name);
    gens.push_back({name, deg, std::nullopt});
  }
  AlgebraPtr alg = makeAlgebra(gens, GradingMode::PureSplit);

  // Re-express each relation over the extended algebra (ids are remapped by
  // name; all generators involved are even, so coefficients carry over).
  std::map<int, Element> images;
  for (int j = 0; j < p.relationCount(); ++j) {
    Element lifted = Element::zero(alg);
    for (const auto& [mon, coeff] : p.relations()[static_cast<std::size_t>(j)].terms()) {
      Monomial::Factors factors;
      for (const auto& [id, exp] : mon.factors())
        factors.emplace_back(*alg->findGen(p.algebra()->gen(id).name), exp);
      lifted.addTerm(Monomial::fromFactors(*alg, std::move(factors)), coeff);
    }
    images.emplace(*alg->findGen(oddNames[static_cast<std::size_t>(j)]),
                   std::move(lifted));
  }
  PureModel model =
      assemble(alg, Differential(alg, std::move(images), /*bigraded=*/true), p);

  // Post-check: the model's cohomology must reproduce the quotient.
  Window w(model.asCdga(), model.formalDimension);
  const GradedBasis gb = quotientBasis(p, model.formalDimension);
  for (int k = 0; k <= model.formalDimension; ++k) {
    if (w.betti(k) != gb.dims[static_cast<std::size_t>(k)])
      throw TheoryViolationError(
          "pure model betti " + std::to_string(w.betti(k)) + " at degree " +
          std::to_string(k) + " differs from quotient dimension " +
          std::to_string(gb.dims[static_cast<std::size_t>(k)]));
  }
  return model;
}

HPlusReport checkHPlusZero(const PureModel& m, int cap) {
  if (cap < m.formalDimension + m.maxOddDegree())
    throw PreconditionError(
        "checkHPlusZero: cap " + std::to_string(cap) +
        " is below formal dimension + max odd generator degree " +
        std::to_string(m.formalDimension + m.maxOddDegree()));
  const FreeGCA& alg = *m.algebra;
  const int maxLower = static_cast<int>(m.oddIds.size());
  Window w(m.asCdga(), cap);

  for (int n = 1; n <= cap; ++n) {
    for (int l = 1; l <= maxLower; ++l) {
      const auto source = basisSlice(alg, n, std::nullopt, l);
      if (source.empty()) continue;
      const auto target = basisSlice(alg, n + 1, std::nullopt, l - 1);
      RMat d = RMat::Constant(static_cast<Eigen::Index>(target.size()),
                              static_cast<Eigen::Index>(source.size()),
                              Rational(0));
      std::map<Monomial, int> targetIndex;
      for (std::size_t i = 0; i < target.size(); ++i)
        targetIndex.emplace(target[i], static_cast<int>(i));
      for (std::size_t j = 0; j < source.size(); ++j) {
        const Element image = applyDifferential(
            m.differential, Element::term(m.algebra, source[j], Rational(1)));
        for (const auto& [mon, coeff] : image.terms())
          d(targetIndex.at(mon), static_cast<Eigen::Index>(j)) = coeff;
      }
      const RMat kernel = linalg::kernelBasis(d);
      for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
        Element z = Element::zero(m.algebra);
        for (Eigen::Index r = 0; r < kernel.rows(); ++r)
          z.addTerm(source[static_cast<std::size_t>(r)], kernel(r, c));
        SliceConstraints constraint;
        constraint.lowerDegree = l + 1;
        if (!w.solveExact(z, constraint).has_value())
          return HPlusReport{false, n, l, std::move(z)};
      }
    }
  }
  return HPlusReport{};
}

EulerReport eulerReport(const PureModel& m, int cap) {
  if (cap < m.formalDimension)
    throw PreconditionError("eulerReport: cap below the formal dimension");
  Window w(m.asCdga(), cap);
  for (int k = std::max(m.formalDimension + 1, 0); k <= cap; ++k) {
    if (w.betti(k) != 0)
      throw PreconditionError(
          "eulerReport: cohomology of dimension " + std::to_string(w.betti(k)) +
          " in degree " + std::to_string(k) +
          " above the formal dimension — raise the cap only if the model is "
          "genuinely elliptic");
  }
  EulerReport report;
  report.formalDimension = m.formalDimension;
  bool oddBettiZero = true;
  for (int k = 0; k <= std::max(m.formalDimension, 0); ++k) {
    const int b = w.betti(k);
    report.euler += (k % 2 == 0) ? b : -b;
    if (k % 2 != 0 && b != 0) oddBettiZero = false;
  }
  report.chiPi = static_cast<int>(m.evenIds.size()) -
                 static_cast<int>(m.oddIds.size());
  report.positivelyElliptic = report.euler > 0;
  const bool eulerPositive = report.euler > 0;
  if (eulerPositive != (report.chiPi == 0) || eulerPositive != oddBettiZero)
    throw TheoryViolationError(
        "euler characteristic equivalences disagree: euler=" +
        std::to_string(report.euler) + ", chiPi=" +
        std::to_string(report.chiPi) + ", odd betti " +
        (oddBettiZero ? "vanish" : "do not vanish"));
  return report;
}

}  // namespace rht
