#include "rht/presentation.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "rht/cohomology.hpp"
#include "rht/errors.hpp"
#include "rht/linalg.hpp"

namespace rht {

Presentation::Presentation(AlgebraPtr algebra, std::vector<Element> relations)
    : algebra_(std::move(algebra)), relations_(std::move(relations)) {
  if (!algebra_ || algebra_->size() == 0)
    throw PreconditionError("presentation: need at least one generator");
  for (const auto& g : algebra_->generators()) {
    if (isOddDegree(g.degree))
      throw PreconditionError("presentation: generator " + g.name +
                              " has odd degree " + std::to_string(g.degree) +
                              "; presentations are evenly generated");
  }
  const int minDeg = minGeneratorDegree();
  for (std::size_t j = 0; j < relations_.size(); ++j) {
    const Element& r = relations_[j];
    requireSameAlgebra(algebra_, r.algebra(), "presentation relation");
    if (r.isZero())
      throw PreconditionError("presentation: relation " + std::to_string(j) +
                              " is zero");
    if (!r.coefficientOf(Monomial{}).isZero())
      throw PreconditionError("presentation: relation " + std::to_string(j) +
                              " has a constant term");
    if (r.topDegree() < 2 * minDeg)
      throw PreconditionError(
          "presentation: relation " + std::to_string(j) + " has degree " +
          std::to_string(r.topDegree()) +
          ", below twice the minimal generator degree " +
          std::to_string(minDeg));
    if (!r.homogeneousDegree().has_value()) homogeneous_ = false;
  }
}

int Presentation::relationDegree(int j) const {
  return relations_.at(static_cast<std::size_t>(j)).topDegree();
}

int Presentation::minGeneratorDegree() const {
  int m = algebra_->gen(0).degree;
  for (const auto& g : algebra_->generators()) m = std::min(m, g.degree);
  return m;
}

int Presentation::maxGeneratorDegree() const {
  int m = 0;
  for (const auto& g : algebra_->generators()) m = std::max(m, g.degree);
  return m;
}

namespace {

GradedBasis homogeneousQuotientBasis(const Presentation& p, int cap) {
  Window w(Cdga::formal(p.algebra(), p.relations()), cap);
  GradedBasis gb;
  gb.cap = cap;
  gb.filtered = false;
  gb.byDegree.resize(static_cast<std::size_t>(cap) + 1);
  gb.dims.resize(static_cast<std::size_t>(cap) + 1, 0);
  for (int k = 0; k <= cap; ++k) {
    gb.byDegree[static_cast<std::size_t>(k)] = w.quotientBasis(k);
    gb.dims[static_cast<std::size_t>(k)] = w.quotientDim(k);
    gb.totalDim += w.quotientDim(k);
  }
  return gb;
}

// Multiplication-compatible monomial order for the filtered path: degree
// first, then lexicographic on exponents with the earliest generator
// dominant. Leading monomials are order-maxima, and multiplying by a
// generator preserves relative order, which the window-propagation argument
// in the header relies on.
std::vector<int> exponentVector(const FreeGCA& alg, const Monomial& m) {
  std::vector<int> e(static_cast<std::size_t>(alg.size()), 0);
  for (const auto& [id, exp] : m.factors()) e[static_cast<std::size_t>(id)] = exp;
  return e;
}

bool filteredGreater(const FreeGCA& alg, const Monomial& a, const Monomial& b) {
  const int da = degreeOf(alg, a), db = degreeOf(alg, b);
  if (da != db) return da > db;
  const auto ea = exponentVector(alg, a), eb = exponentVector(alg, b);
  for (std::size_t i = 0; i < ea.size(); ++i)
    if (ea[i] != eb[i]) return ea[i] > eb[i];
  return false;
}

GradedBasis filteredQuotientBasis(const Presentation& p, int cap) {
  const FreeGCA& alg = *p.algebra();
  // All monomials of degree <= cap, largest first in the elimination order.
  std::vector<Monomial> cols;
  for (int k = 0; k <= cap; ++k) {
    auto slice = basisSlice(alg, k);
    cols.insert(cols.end(), slice.begin(), slice.end());
  }
  std::sort(cols.begin(), cols.end(),
            [&](const Monomial& a, const Monomial& b) {
              return filteredGreater(alg, a, b);
            });
  std::map<Monomial, int> colIndex;
  for (std::size_t i = 0; i < cols.size(); ++i)
    colIndex.emplace(cols[i], static_cast<int>(i));

  // Rows: every relation-times-monomial product whose top degree fits.
  std::vector<linalg::Vec<Rational>> rows;
  for (int j = 0; j < p.relationCount(); ++j) {
    const Element& r = p.relations()[static_cast<std::size_t>(j)];
    const int topDeg = r.topDegree();
    for (int k = 0; k + topDeg <= cap; ++k) {
      for (const Monomial& m : basisSlice(alg, k)) {
        const Element product =
            Element::term(p.algebra(), m, Rational(1)) * r;
        linalg::Vec<Rational> row =
            linalg::Vec<Rational>::Constant(static_cast<Eigen::Index>(cols.size()),
                                            Rational(0));
        for (const auto& [mon, coeff] : product.terms())
          row(colIndex.at(mon)) = coeff;
        rows.push_back(std::move(row));
      }
    }
  }

  RMat mat(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    mat.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  const auto ech = linalg::rowReduce(std::move(mat));

  std::vector<bool> isPivot(cols.size(), false);
  for (auto pcol : ech.pivots) isPivot[static_cast<std::size_t>(pcol)] = true;

  GradedBasis gb;
  gb.cap = cap;
  gb.filtered = true;
  gb.byDegree.resize(static_cast<std::size_t>(cap) + 1);
  gb.dims.resize(static_cast<std::size_t>(cap) + 1, 0);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (isPivot[i]) continue;
    const int k = degreeOf(alg, cols[i]);
    gb.byDegree[static_cast<std::size_t>(k)].push_back(cols[i]);
    gb.dims[static_cast<std::size_t>(k)] += 1;
    gb.totalDim += 1;
  }
  // Canonical intra-degree order for the reported bases.
  for (auto& bucket : gb.byDegree) std::sort(bucket.begin(), bucket.end());
  return gb;
}

std::vector<long long> candidateSeries(const Presentation& p, int cap) {
  std::vector<long long> c(static_cast<std::size_t>(cap) + 1, 0);
  c[0] = 1;
  for (int j = 0; j < p.relationCount(); ++j) {
    const int d = p.relationDegree(j);
    for (int k = cap; k >= d; --k)
      c[static_cast<std::size_t>(k)] -= c[static_cast<std::size_t>(k - d)];
  }
  for (const auto& g : p.algebra()->generators()) {
    for (int k = g.degree; k <= cap; ++k)
      c[static_cast<std::size_t>(k)] += c[static_cast<std::size_t>(k - g.degree)];
  }
  return c;
}

}  // namespace

GradedBasis quotientBasis(const Presentation& p, int cap) {
  if (cap < 0) throw PreconditionError("quotientBasis: cap must be >= 0");
  return p.homogeneous() ? homogeneousQuotientBasis(p, cap)
                         : filteredQuotientBasis(p, cap);
}

RegularityCertificate regularityCertificate(const Presentation& p,
                                            std::optional<int> userCap) {
  if (p.relationCount() != p.generatorCount())
    throw PreconditionError(
        "regularityCertificate: a maximal regular sequence needs exactly one "
        "relation per generator (got " +
        std::to_string(p.relationCount()) + " relations for " +
        std::to_string(p.generatorCount()) + " generators)");

  RegularityCertificate cert;
  cert.homogeneous = p.homogeneous();
  const int maxGen = p.maxGeneratorDegree();

  if (p.homogeneous()) {
    long long sumR = 0, sumX = 0;
    for (int j = 0; j < p.relationCount(); ++j) sumR += p.relationDegree(j);
    for (const auto& g : p.algebra()->generators()) sumX += g.degree;
    const int fd = static_cast<int>(sumR - sumX);
    int cap = std::max(fd, 0) + maxGen;
    if (userCap) cap = std::max(cap, *userCap);
    cert.cap = cap;

    const GradedBasis gb = quotientBasis(p, cap);
    cert.actualDims = gb.dims;
    cert.expectedDims = candidateSeries(p, cap);
    for (int k = 0; k <= cap; ++k) {
      if (cert.expectedDims[static_cast<std::size_t>(k)] !=
          cert.actualDims[static_cast<std::size_t>(k)]) {
        cert.status = RegularityStatus::NotRegular;
        cert.witnessDegree = k;
        return cert;
      }
    }
    cert.status = RegularityStatus::Regular;
    cert.formalDimension = fd;
    long long num = 1, den = 1;
    for (int j = 0; j < p.relationCount(); ++j) num *= p.relationDegree(j);
    for (const auto& g : p.algebra()->generators()) den *= g.degree;
    if (den == 0 || num % den != 0)
      throw TheoryViolationError(
          "regular sequence with non-integral degree quotient " +
          std::to_string(num) + "/" + std::to_string(den));
    cert.totalDimension = num / den;
    if (cert.totalDimension != gb.totalDim)
      throw TheoryViolationError(
          "regular sequence whose quotient dimension " +
          std::to_string(gb.totalDim) + " differs from the degree product " +
          std::to_string(cert.totalDimension));
    return cert;
  }

  if (!userCap)
    throw PreconditionError(
        "regularityCertificate: non-homogeneous relations need an explicit "
        "cap");
  const int cap = *userCap;
  const GradedBasis gb = quotientBasis(p, cap);
  cert.cap = cap;
  cert.actualDims = gb.dims;
  int top = 0;  // the unit always survives (relations have no constant term)
  for (int k = 0; k <= cap; ++k)
    if (gb.dims[static_cast<std::size_t>(k)] > 0) top = k;
  if (cap - top >= maxGen) {
    cert.status = RegularityStatus::Regular;
    cert.certifiedUpToCap = true;
    cert.formalDimension = top;
    cert.totalDimension = gb.totalDim;
  } else {
    cert.status = RegularityStatus::Inconclusive;
  }
  return cert;
}

}  // namespace rht
