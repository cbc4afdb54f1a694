#include "rht/cohomology.hpp"

#include <string>

namespace rht {

namespace {

bool monomialAllowed(const FreeGCA& alg, const Monomial& m,
                     const SliceConstraints& c) {
  if (c.minWordLength && wordLengthOf(m) < *c.minWordLength) return false;
  if (c.lowerDegree && lowerDegreeOf(alg, m) != *c.lowerDegree) return false;
  if (c.keep && !c.keep(alg, m)) return false;
  return true;
}

}  // namespace

Window::Window(Cdga cdga, int cap) : cdga_(std::move(cdga)), cap_(cap) {
  if (cap_ < 0) throw PreconditionError("window with negative cap");
  validateCdga(cdga_);
  const FreeGCA& alg = *cdga_.algebra;
  deg_.resize(static_cast<size_t>(cap_) + 2);

  // Quotient structure: free slice, ideal echelon, basis monomials.
  for (int k = 0; k <= cap_ + 1; ++k) {
    DegreeData& dd = deg_[static_cast<size_t>(k)];
    dd.freeSlice = basisSlice(alg, k);
    for (size_t i = 0; i < dd.freeSlice.size(); ++i)
      dd.freeIndex.emplace(dd.freeSlice[i], static_cast<int>(i));
    const auto n = static_cast<Eigen::Index>(dd.freeSlice.size());

    std::vector<RVec> rows;
    for (const Element& r : cdga_.relations) {
      const int dr = *r.homogeneousDegree();
      if (dr > k) continue;
      for (const Monomial& m : basisSlice(alg, k - dr)) {
        const Element prod = r * Element::term(cdga_.algebra, m, Rational(1));
        if (prod.isZero()) continue;
        rows.push_back(freeVector(prod, k));
      }
    }
    RMat stacked(static_cast<Eigen::Index>(rows.size()), n);
    for (size_t i = 0; i < rows.size(); ++i)
      stacked.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    dd.idealEchelon = linalg::rowReduce<Rational>(std::move(stacked));

    std::vector<bool> isPivot(dd.freeSlice.size(), false);
    for (auto p : dd.idealEchelon.pivots) isPivot[static_cast<size_t>(p)] = true;
    for (size_t i = 0; i < dd.freeSlice.size(); ++i)
      if (!isPivot[i]) {
        dd.basisFreeIdx.push_back(static_cast<int>(i));
        dd.basis.push_back(dd.freeSlice[i]);
      }
  }

  // The ideal must be differential-stable or the quotient differential is
  // ill-defined. d(r * m) = d(r) m +- r d(m) and the second part is an ideal
  // element by construction, so checking the relation generators suffices.
  for (const Element& r : cdga_.relations) {
    const int dr = *r.homogeneousDegree();
    if (dr + 1 > cap_ + 1) continue;
    const Element drel = applyDifferential(cdga_.differential, r);
    if (drel.isZero()) continue;
    const RVec red = linalg::reduceAgainst<Rational>(
        deg_[static_cast<size_t>(dr + 1)].idealEchelon, freeVector(drel, dr + 1));
    for (Eigen::Index i = 0; i < red.rows(); ++i)
      if (!red(i).isZero())
        throw PreconditionError(
            "relation ideal is not differential-stable: d(" + r.str() +
            ") does not lie in the ideal");
  }

  // Differential in quotient coordinates, degrees 0..cap.
  for (int k = 0; k <= cap_; ++k) {
    DegreeData& dd = deg_[static_cast<size_t>(k)];
    const auto rows =
        static_cast<Eigen::Index>(deg_[static_cast<size_t>(k + 1)].basis.size());
    dd.d = RMat::Constant(rows, static_cast<Eigen::Index>(dd.basis.size()),
                          Rational(0));
    for (size_t j = 0; j < dd.basis.size(); ++j) {
      const Element dm = applyDifferential(
          cdga_.differential,
          Element::term(cdga_.algebra, dd.basis[j], Rational(1)));
      if (dm.isZero()) continue;
      dd.d.col(static_cast<Eigen::Index>(j)) = coordinates(dm, k + 1);
    }
  }

  // Cocycles, coboundaries, classes.
  for (int k = 0; k <= cap_; ++k) {
    DegreeData& dd = deg_[static_cast<size_t>(k)];
    dd.cocycleCols = linalg::kernelBasis<Rational>(dd.d);
    if (k == 0) {
      dd.coboundaryCols =
          RMat::Constant(static_cast<Eigen::Index>(dd.basis.size()), 0, Rational(0));
    } else {
      const RMat& dPrev = deg_[static_cast<size_t>(k - 1)].d;
      const auto ech = linalg::spanEchelon<Rational>(dPrev);
      dd.coboundaryCols = RMat(ech.rows.transpose());
    }
    dd.coboundaryEch = linalg::spanEchelon<Rational>(dd.coboundaryCols);
    dd.classCols = linalg::quotientRepresentatives<Rational>(dd.coboundaryCols,
                                                             dd.cocycleCols);
    dd.cohomologyReady = true;
  }
}

const Window::DegreeData& Window::at(int degree) const {
  if (degree < 0 || degree > cap_ + 1)
    throw PreconditionError("degree " + std::to_string(degree) +
                            " outside window cap " + std::to_string(cap_));
  return deg_[static_cast<size_t>(degree)];
}

RVec Window::freeVector(const Element& e, int degree) const {
  const DegreeData& dd = deg_.at(static_cast<size_t>(degree));
  RVec v = RVec::Constant(static_cast<Eigen::Index>(dd.freeSlice.size()),
                          Rational(0));
  for (const auto& [m, c] : e.terms()) {
    const auto it = dd.freeIndex.find(m);
    if (it == dd.freeIndex.end())
      throw GradingError("element has a term of degree != " +
                         std::to_string(degree));
    v(it->second) = c;
  }
  return v;
}

const std::vector<Monomial>& Window::quotientBasis(int degree) const {
  return at(degree).basis;
}

int Window::quotientDim(int degree) const {
  return static_cast<int>(at(degree).basis.size());
}

RVec Window::coordinates(const Element& e, int degree) const {
  const DegreeData& dd = at(degree);
  if (!e.isHomogeneousOfDegree(degree))
    throw GradingError("coordinates: element is not homogeneous of degree " +
                       std::to_string(degree));
  RVec red = linalg::reduceAgainst<Rational>(dd.idealEchelon,
                                             freeVector(e, degree));
  RVec out = RVec::Constant(static_cast<Eigen::Index>(dd.basis.size()),
                            Rational(0));
  for (size_t j = 0; j < dd.basisFreeIdx.size(); ++j) {
    out(static_cast<Eigen::Index>(j)) = red(dd.basisFreeIdx[j]);
    red(dd.basisFreeIdx[j]) = Rational(0);
  }
  for (Eigen::Index i = 0; i < red.rows(); ++i)
    if (!red(i).isZero())
      throw TheoryViolationError(
          "normal form left support on an ideal pivot monomial");
  return out;
}

Element Window::elementFrom(const RVec& coords, int degree) const {
  const DegreeData& dd = at(degree);
  if (coords.rows() != static_cast<Eigen::Index>(dd.basis.size()))
    throw PreconditionError("elementFrom: coordinate size mismatch");
  Element e(cdga_.algebra);
  for (size_t j = 0; j < dd.basis.size(); ++j)
    e.addTerm(dd.basis[j], coords(static_cast<Eigen::Index>(j)));
  return e;
}

Element Window::normalForm(const Element& e) const {
  Element out(cdga_.algebra);
  if (e.isZero()) return out;
  if (!cdga_.hasRelations()) return e;
  std::map<int, Element> byDegree;
  for (const auto& [m, c] : e.terms()) {
    const int d = degreeOf(*cdga_.algebra, m);
    auto [it, fresh] = byDegree.try_emplace(d, cdga_.algebra);
    it->second.addTerm(m, c);
  }
  for (const auto& [d, part] : byDegree)
    out += elementFrom(coordinates(part, d), d);
  return out;
}

const RMat& Window::dMatrix(int degree) const {
  const DegreeData& dd = at(degree);
  if (!dd.cohomologyReady)
    throw PreconditionError("differential matrix beyond the window cap");
  return dd.d;
}

const RMat& Window::cocycles(int degree) const {
  const DegreeData& dd = at(degree);
  if (!dd.cohomologyReady)
    throw PreconditionError("cocycles beyond the window cap");
  return dd.cocycleCols;
}

const RMat& Window::coboundaries(int degree) const {
  const DegreeData& dd = at(degree);
  if (!dd.cohomologyReady)
    throw PreconditionError("coboundaries beyond the window cap");
  return dd.coboundaryCols;
}

const RMat& Window::classes(int degree) const {
  const DegreeData& dd = at(degree);
  if (!dd.cohomologyReady)
    throw PreconditionError("classes beyond the window cap");
  return dd.classCols;
}

int Window::betti(int degree) const {
  return static_cast<int>(classes(degree).cols());
}

std::vector<Element> Window::classRepresentatives(int degree) const {
  const RMat& cls = classes(degree);
  std::vector<Element> out;
  out.reserve(static_cast<size_t>(cls.cols()));
  for (Eigen::Index j = 0; j < cls.cols(); ++j)
    out.push_back(elementFrom(RVec(cls.col(j)), degree));
  return out;
}

bool Window::isCocycle(const Element& e) const {
  if (e.isZero()) return true;
  const auto deg = e.homogeneousDegree();
  if (!deg)
    throw GradingError("isCocycle expects a homogeneous element");
  if (*deg > cap_)
    throw PreconditionError("isCocycle beyond the window cap");
  const RVec v = dMatrix(*deg) * coordinates(e, *deg);
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    if (!v(i).isZero()) return false;
  return true;
}

RVec Window::classCoordinates(const Element& cocycle, int degree) const {
  if (!isCocycle(cocycle))
    throw PreconditionError("classCoordinates of a non-cocycle");
  const DegreeData& dd = at(degree);
  const RVec red = linalg::reduceAgainst<Rational>(
      dd.coboundaryEch, coordinates(cocycle, degree));
  auto sol = linalg::solve<Rational>(dd.classCols, red);
  if (!sol)
    throw TheoryViolationError(
        "cocycle residue not expressible in the class basis");
  return *sol;
}

std::optional<Element> Window::solveExact(const Element& target,
                                          const SliceConstraints& c) const {
  if (target.isZero()) return Element::zero(cdga_.algebra);
  const auto degOpt = target.homogeneousDegree();
  if (!degOpt) throw GradingError("solveExact expects a homogeneous target");
  const int k = *degOpt;
  if (k < 1 || k > cap_ + 1)
    throw PreconditionError("solveExact target degree outside the window");
  // Precondition: the target is closed (checkable while inside the window).
  if (k <= cap_ && !isCocycle(target))
    throw PreconditionError("solveExact target is not a cocycle");

  const DegreeData& src = at(k - 1);
  std::vector<Eigen::Index> allowed;
  for (size_t j = 0; j < src.basis.size(); ++j)
    if (monomialAllowed(*cdga_.algebra, src.basis[j], c))
      allowed.push_back(static_cast<Eigen::Index>(j));
  const RMat& d = dMatrix(k - 1);
  RMat restricted(d.rows(), static_cast<Eigen::Index>(allowed.size()));
  for (size_t j = 0; j < allowed.size(); ++j)
    restricted.col(static_cast<Eigen::Index>(j)) = d.col(allowed[j]);
  const auto sol = linalg::solve<Rational>(restricted, coordinates(target, k));
  if (!sol) return std::nullopt;
  Element eta(cdga_.algebra);
  for (size_t j = 0; j < allowed.size(); ++j)
    eta.addTerm(src.basis[static_cast<size_t>(allowed[j])],
                (*sol)(static_cast<Eigen::Index>(j)));
  return eta;
}

// ---------------------------------------------------------------------------

DGMorphism::DGMorphism(Cdga source, Cdga target, std::map<int, Element> images)
    : source_(std::move(source)),
      target_(std::move(target)),
      images_(std::move(images)),
      zero_(target_.algebra) {
  validateCdga(source_);
  validateCdga(target_);
  for (auto it = images_.begin(); it != images_.end();) {
    const int id = it->first;
    Element& img = it->second;
    if (id < 0 || id >= source_.algebra->size())
      throw DomainMismatchError("morphism image for unknown generator id " +
                                std::to_string(id));
    requireSameAlgebra(target_.algebra, img.algebra(), "morphism image");
    if (img.isZero()) {
      it = images_.erase(it);
      continue;
    }
    const Generator& g = source_.algebra->gen(id);
    if (!img.isHomogeneousOfDegree(g.degree))
      throw GradingError("morphism image of " + g.name +
                         " is not homogeneous of degree " +
                         std::to_string(g.degree));
    ++it;
  }
}

const Element& DGMorphism::image(int genId) const {
  const auto it = images_.find(genId);
  return it == images_.end() ? zero_ : it->second;
}

Element DGMorphism::apply(const Element& e) const {
  requireSameAlgebra(source_.algebra, e.algebra(), "morphism application");
  Element out(target_.algebra);
  for (const auto& [m, c] : e.terms()) {
    Element prod = Element::unit(target_.algebra, c);
    for (const auto& [id, exp] : m.factors()) {
      const Element& img = image(id);
      for (int i = 0; i < exp && !prod.isZero(); ++i) prod = prod * img;
      if (prod.isZero()) break;
    }
    out += prod;
  }
  return out;
}

ChainMapReport checkChainMap(const DGMorphism& phi, int cap) {
  int needed = cap;
  for (const auto& g : phi.source().algebra->generators())
    needed = std::max(needed, g.degree + 1);
  Window targetWin(phi.target(), needed);
  ChainMapReport report;
  for (int id = 0; id < phi.source().algebra->size(); ++id) {
    const Element lhs =
        phi.apply(applyDifferential(phi.source().differential, Element::fromGenerator(
                                        phi.source().algebra, id)));
    const Element rhs = applyDifferential(phi.target().differential, phi.image(id));
    const Element diff = targetWin.normalForm(lhs - rhs);
    if (!diff.isZero()) {
      report.ok = false;
      report.generator = id;
      return report;
    }
  }
  return report;
}

QuasiIsoReport isQuasiIso(const DGMorphism& phi, int cap) {
  QuasiIsoReport report;
  report.verifiedCap = cap;
  const ChainMapReport cm = checkChainMap(phi, cap);
  report.chainMap = cm.ok;
  if (!cm.ok) {
    report.chainMapGenerator = cm.generator;
    report.reason = "not a chain map at generator " +
                    phi.source().algebra->gen(cm.generator).name;
    return report;
  }
  Window src(phi.source(), cap);
  Window dst(phi.target(), cap);
  for (int k = 0; k <= cap; ++k) {
    if (src.betti(k) != dst.betti(k)) {
      report.firstFailingDegree = k;
      report.reason = "betti mismatch in degree " + std::to_string(k) + " (" +
                      std::to_string(src.betti(k)) + " vs " +
                      std::to_string(dst.betti(k)) + ")";
      return report;
    }
    const int b = src.betti(k);
    if (b == 0) continue;
    RMat induced(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b));
    const auto reps = src.classRepresentatives(k);
    for (int j = 0; j < b; ++j)
      induced.col(j) = dst.classCoordinates(phi.apply(reps[static_cast<size_t>(j)]), k);
    if (linalg::rank<Rational>(induced) != b) {
      report.firstFailingDegree = k;
      report.reason = "induced map not bijective in degree " + std::to_string(k);
      return report;
    }
  }
  report.ok = true;
  return report;
}

}  // namespace rht
