#include "rht/derivation.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "rht/cohomology.hpp"
#include "rht/errors.hpp"
#include "rht/linalg.hpp"

namespace rht {

namespace {

// Partial derivative of a polynomial in even generators.
Element partialDerivative(const Element& e, int genId) {
  Element out = Element::zero(e.algebra());
  for (const auto& [mon, coeff] : e.terms()) {
    const int exp = mon.exponentOf(genId);
    if (exp == 0) continue;
    Monomial::Factors factors;
    for (const auto& [id, k] : mon.factors()) {
      if (id == genId) {
        if (k > 1) factors.emplace_back(id, k - 1);
      } else {
        factors.emplace_back(id, k);
      }
    }
    out.addTerm(Monomial::fromFactors(*e.algebra(), std::move(factors)),
                coeff * Rational(exp));
  }
  return out;
}

}  // namespace

DerivationSpace derivationSpace(const Presentation& p, int shift,
                                const DerivationOptions& options) {
  if (shift >= 0)
    throw PreconditionError("derivationSpace: shift must be negative");
  if (!p.homogeneous())
    throw PreconditionError(
        "derivationSpace: homogeneous relations required (the quotient must "
        "be graded)");
  if (!options.waiveRegularity) {
    const RegularityCertificate cert = regularityCertificate(p);
    if (cert.status != RegularityStatus::Regular)
      throw PreconditionError(
          "derivationSpace: presentation is not certified regular");
  }

  int cap = 0;
  for (const auto& g : p.algebra()->generators())
    cap = std::max(cap, g.degree + shift);
  for (int j = 0; j < p.relationCount(); ++j)
    cap = std::max(cap, p.relationDegree(j) + shift);
  Window w(Cdga::formal(p.algebra(), p.relations()), cap);

  // Unknown layout: one block per generator with |x_i| + shift >= 0, one
  // coordinate per quotient basis monomial of that degree.
  const int n = p.generatorCount();
  struct Block {
    int genId;
    int degree;           // |x_i| + shift
    int offset, width;
  };
  std::vector<Block> blocks;
  int unknowns = 0;
  for (int i = 0; i < n; ++i) {
    const int d = p.algebra()->gen(i).degree + shift;
    if (d < 0) continue;
    const int width = w.quotientDim(d);
    if (width == 0) continue;
    blocks.push_back({i, d, unknowns, width});
    unknowns += width;
  }

  DerivationSpace space;
  space.shift = shift;
  if (unknowns == 0) return space;

  // Constraint rows: theta(R_j) == 0 in the quotient, degree |R_j| + shift.
  int rows = 0;
  std::vector<int> rowOffset(static_cast<std::size_t>(p.relationCount()), 0);
  for (int j = 0; j < p.relationCount(); ++j) {
    rowOffset[static_cast<std::size_t>(j)] = rows;
    const int d = p.relationDegree(j) + shift;
    rows += (d >= 0) ? w.quotientDim(d) : 0;
  }

  RMat m = RMat::Constant(rows, unknowns, Rational(0));
  for (int j = 0; j < p.relationCount(); ++j) {
    const int d = p.relationDegree(j) + shift;
    if (d < 0 || w.quotientDim(d) == 0) continue;
    for (const Block& b : blocks) {
      const Element dr =
          partialDerivative(p.relations()[static_cast<std::size_t>(j)], b.genId);
      if (dr.isZero()) continue;
      for (int c = 0; c < b.width; ++c) {
        const Element contrib =
            dr * Element::term(p.algebra(), w.quotientBasis(b.degree)[static_cast<std::size_t>(c)],
                               Rational(1));
        const RVec coords = w.coordinates(contrib, d);
        for (Eigen::Index r = 0; r < coords.size(); ++r)
          m(rowOffset[static_cast<std::size_t>(j)] + r, b.offset + c) = coords(r);
      }
    }
  }

  const RMat kernel = linalg::kernelBasis(m);
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    std::map<int, Element> images;
    for (const Block& b : blocks) {
      Element img = Element::zero(p.algebra());
      for (int k = 0; k < b.width; ++k)
        img.addTerm(w.quotientBasis(b.degree)[static_cast<std::size_t>(k)],
                    kernel(b.offset + k, c));
      if (!img.isZero()) images.emplace(b.genId, std::move(img));
    }
    space.basis.push_back(std::move(images));
  }
  return space;
}

HalperinVerdict meierVerdict(const Presentation& p) {
  HalperinVerdict verdict;
  verdict.oddShiftNote =
      "odd shifts skipped: the quotient vanishes in odd degrees, so every "
      "odd-shift derivation image is zero";
  int maxGen = 0;
  std::set<int, std::greater<int>> shifts;
  for (const auto& g : p.algebra()->generators()) {
    maxGen = std::max(maxGen, g.degree);
    shifts.insert(-g.degree);
  }
  for (int k = -2; k >= -(maxGen - 2); k -= 2) shifts.insert(k);

  verdict.holds = true;
  for (int k : shifts) {
    verdict.scannedShifts.push_back(k);
    verdict.evidence.push_back(derivationSpace(p, k));
    if (!verdict.evidence.back().empty()) verdict.holds = false;
  }
  return verdict;
}

}  // namespace rht
