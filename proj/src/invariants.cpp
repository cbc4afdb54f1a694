#include "rht/invariants.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "rht/differential.hpp"
#include "rht/errors.hpp"
#include "rht/linalg.hpp"
#include "rht/pure_model.hpp"

namespace rht {

namespace {

bool isZeroVec(const RVec& v) {
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    if (!(v(i) == Rational(0))) return false;
  return true;
}

// Incremental span of coordinate vectors; insert() reports whether the vector
// enlarged the span. Kept in reduced echelon form so membership is exact.
struct SpanBuilder {
  linalg::Echelon<Rational> ech;
  int dim = 0;

  bool insert(const RVec& v) {
    if (isZeroVec(v)) return false;
    if (dim > 0 && linalg::inSpan(ech, v)) return false;
    RMat rows(dim + 1, v.rows());
    if (dim > 0) rows.topRows(dim) = ech.rows;
    rows.row(dim) = v.transpose();
    ech = linalg::rowReduce(std::move(rows));
    dim = static_cast<int>(ech.rows.rows());
    return true;
  }

  bool contains(const RVec& v) const {
    if (isZeroVec(v)) return true;
    return dim > 0 && linalg::inSpan(ech, v);
  }
};

void requireStabilizedWindow(const Window& H, const char* op) {
  if (H.cap() < 2 || H.betti(H.cap()) != 0 || H.betti(H.cap() - 1) != 0)
    throw PreconditionError(
        std::string(op) + ": cohomology does not vanish in the top two window "
        "degrees; the window has not stabilized, widen the cap past the top "
        "degree plus one");
}

int maxGeneratorDegree(const FreeGCA& alg) {
  int top = 0;
  for (const Generator& gn : alg.generators()) top = std::max(top, gn.degree);
  return top;
}

// Applies the degree-homogeneous derivation of even total degree determined
// by `values` (generator id -> image, absent means zero) to an element, by
// the graded Leibniz rule. The image of a generator has the parity of the
// generator itself, so moving it out of a monomial costs one sign per odd
// factor it crosses, and only when the removed generator is odd.
Element applyEvenDerivation(const AlgebraPtr& alg,
                            const std::map<int, Element>& values,
                            const Element& x) {
  Element out = Element::zero(alg);
  for (const auto& [m, c] : x.terms()) {
    const Monomial::Factors& fs = m.factors();
    for (size_t j = 0; j < fs.size(); ++j) {
      const auto it = values.find(fs[j].first);
      if (it == values.end()) continue;
      Monomial::Factors rest;
      rest.reserve(fs.size());
      for (size_t t = 0; t < fs.size(); ++t) {
        const int e = fs[t].second - (t == j ? 1 : 0);
        if (e > 0) rest.emplace_back(fs[t].first, e);
      }
      int oddAfter = 0;
      for (size_t t = j + 1; t < fs.size(); ++t)
        if (alg->gen(fs[t].first).degree % 2 != 0) oddAfter += fs[t].second;
      const bool removedOdd = alg->gen(fs[j].first).degree % 2 != 0;
      Rational coeff = c * Rational(fs[j].second);
      if (removedOdd && oddAfter % 2 != 0) coeff = -coeff;
      out += Element::term(alg, Monomial::fromFactors(*alg, std::move(rest)),
                           coeff) *
             it->second;
    }
  }
  return out;
}

std::string joinNumbers(const char* lhsName, int lhs, const char* relation,
                        int a, int b, const char* rhsName) {
  return std::string(lhsName) + " = " + std::to_string(lhs) + " " + relation +
         " " + std::to_string(a) + " + " + std::to_string(b) + " = " + rhsName;
}

}  // namespace

int cupLength(const Window& H) {
  static const char* op = "cupLength";
  requireStabilizedWindow(H, op);
  const int cap = H.cap();

  // All positive classes, with a representative and its degree.
  std::vector<std::pair<int, Element>> units;
  for (int n = 1; n <= cap; ++n)
    for (Element& r : H.classRepresentatives(n))
      units.emplace_back(n, std::move(r));
  if (units.empty()) return 0;

  int best = 1;
  std::vector<std::pair<int, Element>> current = units;
  for (int k = 2; k <= cap; ++k) {
    std::vector<std::pair<int, Element>> next;
    std::map<int, SpanBuilder> spans;
    for (const auto& [dx, x] : current) {
      for (const auto& [dy, y] : units) {
        const int n = dx + dy;
        if (n > cap) continue;
        const Element z = x * y;
        if (z.isZero()) continue;
        const RVec coords = H.classCoordinates(z, n);
        if (spans[n].insert(coords)) next.emplace_back(n, z);
      }
    }
    if (next.empty()) return best;
    best = k;
    current = std::move(next);
  }
  return best;
}

ToomerReport toomer(const Window& H) {
  static const char* op = "toomer";
  if (!H.cdga().relations.empty())
    throw PreconditionError(
        std::string(op) + ": the model carries relations; word length is "
        "only defined on a free model");
  requireStabilizedWindow(H, op);
  const int cap = H.cap();

  int best = 0;
  for (int n = 1; n <= cap - 1; ++n) {
    if (H.betti(n) == 0) continue;
    best = std::max(best, 1);
    const std::vector<Monomial>& basis = H.quotientBasis(n);
    const RMat& d = H.dMatrix(n);
    const linalg::Echelon<Rational> boundaries =
        linalg::spanEchelon(H.coboundaries(n));
    for (int s = 2;; ++s) {
      std::vector<Eigen::Index> idx;
      for (size_t j = 0; j < basis.size(); ++j)
        if (wordLengthOf(basis[j]) >= s)
          idx.push_back(static_cast<Eigen::Index>(j));
      if (idx.empty()) break;
      RMat restricted(d.rows(), static_cast<Eigen::Index>(idx.size()));
      for (size_t j = 0; j < idx.size(); ++j)
        restricted.col(static_cast<Eigen::Index>(j)) = d.col(idx[j]);
      const RMat kernel = linalg::kernelBasis(restricted);
      bool survivor = false;
      for (Eigen::Index kc = 0; kc < kernel.cols() && !survivor; ++kc) {
        RVec full =
            RVec::Constant(static_cast<Eigen::Index>(basis.size()), Rational(0));
        for (size_t j = 0; j < idx.size(); ++j)
          full(idx[j]) = kernel(static_cast<Eigen::Index>(j), kc);
        survivor = !linalg::inSpan(boundaries, full);
      }
      if (!survivor) break;
      best = std::max(best, s);
    }
  }
  return ToomerReport{best, isDecomposable(H.cdga().differential)};
}

ToomerReport toomer(const Cdga& model, int cap) {
  return toomer(Window(model, cap));
}

int nil0(const FormalityCertificate& cert, std::optional<int> crossCheck,
         std::optional<int> cap) {
  const int capH = cap.value_or(cert.verifiedCap);
  const Window H(cert.morphism.target(), capH);
  const int value = cupLength(H);
  if (crossCheck && *crossCheck != value)
    throw TheoryViolationError(
        "nil0: cup length " + std::to_string(value) +
        " of the certified cohomology disagrees with the word-filtration "
        "value " + std::to_string(*crossCheck) +
        "; the formality collapse fails on this instance");
  return value;
}

AcyclicIdealQuotient cl0UpperViaAcyclicQuotient(const KSExtension& ext,
                                                std::optional<int> cap) {
  static const char* op = "cl0UpperViaAcyclicQuotient";
  const AlgebraPtr& alg = ext.total.algebra;

  // --- Preconditions: odd-wedge base, positively elliptic pure fiber, even
  // fiber generators closed. ------------------------------------------------
  if (!isOddWedgeBase(ext.base))
    throw PreconditionError(
        std::string(op) + ": the base is not a formal wedge of odd spheres "
        "(zero differential, odd generators, vanishing products)");
  const PureModel pm = certifyPositivelyEllipticFiber(ext, std::nullopt);
  const int fd = pm.formalDimension;
  const int maxBase = maxGeneratorDegree(*ext.base.algebra);
  const int capT = cap.value_or(maxBase + fd + 2);

  const Window WT(ext.total, capT);
  for (int v : ext.fiberOrder) {
    if (alg->gen(v).degree % 2 != 0) continue;
    const Element& img = ext.total.differential.image(v);
    if (!img.isZero() && !WT.normalForm(img).isZero())
      throw PreconditionError(
          std::string(op) + ": the even fiber generator " + alg->gen(v).name +
          " is not closed; close the even generators first "
          "(trivializeOverOddWedge or filteredNormalize)");
  }

  const Cdga fm = ext.fiberModel();
  const AlgebraPtr& FA = fm.algebra;
  const Window WF(fm, capT);

  // --- The kernel of rho: (Lambda V)^+ in lower degree plus the boundaries
  // inside Lambda(V_even), spanned degree by degree. The dimension count
  // verifies that rho is exactly the projection onto H(F): the slice splits
  // as ker(rho) + H whenever H carries no positive-lower classes. -----------
  std::map<int, std::vector<Element>> kerSpan;
  std::map<int, SpanBuilder> kerEch;
  for (int n = 0; n <= capT; ++n) {
    kerEch[n];  // materialize the degree even when nothing spans it
    const std::vector<Monomial>& slice = WF.quotientBasis(n);
    for (const Monomial& m : slice) {
      if (lowerDegreeOf(*FA, m) < 1) continue;
      const Element e = Element::term(FA, m, Rational(1));
      if (kerEch[n].insert(WF.coordinates(e, n))) kerSpan[n].push_back(e);
    }
    if (n >= 1) {
      for (const Monomial& m : WF.quotientBasis(n - 1)) {
        if (lowerDegreeOf(*FA, m) != 1) continue;
        const Element de = applyDifferential(
            fm.differential, Element::term(FA, m, Rational(1)));
        if (de.isZero()) continue;
        if (kerEch[n].insert(WF.coordinates(de, n))) kerSpan[n].push_back(de);
      }
    }
    const int expected = static_cast<int>(slice.size()) - WF.betti(n);
    if (kerEch[n].dim != expected)
      throw TheoryViolationError(
          std::string(op) + ": the projection kernel has dimension " +
          std::to_string(kerEch[n].dim) + " instead of " +
          std::to_string(expected) + " in degree " + std::to_string(n) +
          "; the fiber carries positive-lower cohomology there");
  }

  // --- Base-direction derivations: D(w) = d_F(w) + sum_i b_i Omega_i(w)
  // for odd w, with Omega_i vanishing on the even generators. Over a wedge a
  // normal-form image can carry at most one base factor. -------------------
  std::vector<bool> baseMask(alg->generators().size(), false);
  for (int id : ext.baseIds) baseMask[static_cast<size_t>(id)] = true;
  const auto toFiberElement = [&](const Monomial& m,
                                  const Rational& c) -> Element {
    Monomial::Factors factors;
    for (const auto& [id, exp] : m.factors()) {
      const std::optional<int> fid = FA->findGen(alg->gen(id).name);
      if (!fid)
        throw TheoryViolationError(std::string(op) +
                                   ": a fiber-part factor is missing from "
                                   "the fiber algebra");
      factors.emplace_back(*fid, exp);
    }
    Element out = Element::zero(FA);
    out.addTerm(Monomial::fromFactors(*FA, std::move(factors)), c);
    return out;
  };

  std::map<int, std::map<int, Element>> omega;  // base id -> (fiber id -> image)
  for (int w : ext.fiberOrder) {
    if (alg->gen(w).degree % 2 == 0) continue;
    const int wFiber = *FA->findGen(alg->gen(w).name);
    const Element img = WT.normalForm(ext.total.differential.image(w));
    for (const auto& [m, c] : img.terms()) {
      int baseWord = 0;
      Monomial::Factors basePart, fiberPart;
      for (const auto& [id, exp] : m.factors()) {
        if (baseMask[static_cast<size_t>(id)]) {
          baseWord += exp;
          basePart.emplace_back(id, exp);
        } else {
          fiberPart.emplace_back(id, exp);
        }
      }
      if (baseWord == 0) continue;  // the fiber-differential part
      if (baseWord > 1)
        throw TheoryViolationError(
            std::string(op) + ": a normal-form image of " + alg->gen(w).name +
            " carries two base factors over a wedge base");
      const int b = basePart.front().first;
      const Monomial bMono = Monomial::fromFactors(*alg, std::move(basePart));
      const Monomial fMono = Monomial::fromFactors(*alg, fiberPart);
      const auto prod = multiplyMonomials(*alg, bMono, fMono);
      if (!prod || prod->monomial != m)
        throw TheoryViolationError(std::string(op) +
                                   ": monomial base/fiber split failed to "
                                   "recombine");
      const Element piece = toFiberElement(fMono, c * Rational(prod->sign));
      auto& images = omega[b];
      const auto it = images.find(wFiber);
      if (it == images.end())
        images.emplace(wFiber, piece);
      else
        it->second += piece;
    }
  }

  // Each derivation must commute with the fiber differential. It kills every
  // even generator, hence every image d_F(w), so the commutator collapses to
  // d_F(Omega_i(w)) = 0 -- and extension validity forces exactly that.
  for (const auto& [b, images] : omega) {
    for (const auto& [wFiber, value] : images) {
      if (!applyDifferential(fm.differential, value).isZero())
        throw TheoryViolationError(
            std::string(op) + ": the derivation along " + alg->gen(b).name +
            " fails to commute with the fiber differential on " +
            FA->gen(wFiber).name);
    }
  }

  // ker(rho) must be stable under d_F and under every Omega_i.
  for (int n = 0; n < capT; ++n) {
    const auto spanIt = kerSpan.find(n);
    if (spanIt == kerSpan.end()) continue;
    for (const Element& chi : spanIt->second) {
      const Element dChi = applyDifferential(fm.differential, chi);
      if (!dChi.isZero() &&
          !kerEch[n + 1].contains(WF.coordinates(dChi, n + 1)))
        throw TheoryViolationError(
            std::string(op) + ": ker(rho) is not d_F-stable in degree " +
            std::to_string(n));
      for (const auto& [b, images] : omega) {
        const Element oChi = applyEvenDerivation(FA, images, chi);
        if (oChi.isZero()) continue;
        const int target = n + 1 - alg->gen(b).degree;
        if (target <= 0 ||
            !kerEch[target].contains(WF.coordinates(oChi, target)))
          throw TheoryViolationError(
              std::string(op) + ": ker(rho) is not stable under the "
              "derivation along " + alg->gen(b).name + " in degree " +
              std::to_string(n));
      }
    }
  }

  // --- The total ideal H(B) (x) ker(rho), spanned degreewise by lifted
  // products of surviving base monomials with the kernel spans. ------------
  const Window WB(ext.base, std::max(maxBase, 0));
  std::map<int, std::vector<Element>> idealSlices;
  std::map<int, SpanBuilder> idealEch;
  std::map<int, int> idealDim;
  for (int n = 0; n <= capT; ++n) {
    idealEch[n];
    for (int db = 0; db <= std::min(n, maxBase); ++db) {
      const auto spanIt = kerSpan.find(n - db);
      if (spanIt == kerSpan.end()) continue;
      for (const Monomial& beta : WB.quotientBasis(db)) {
        const Element liftedBase = liftBaseElement(
            ext, Element::term(ext.base.algebra, beta, Rational(1)));
        for (const Element& kappa : spanIt->second) {
          const Element e =
              WT.normalForm(liftedBase * liftFiberElement(ext, kappa));
          if (e.isZero()) continue;
          if (idealEch[n].insert(WT.coordinates(e, n)))
            idealSlices[n].push_back(e);
        }
      }
    }
    idealDim[n] = idealEch[n].dim;
  }

  // --- The formal quotient and the projection onto it. --------------------
  std::vector<int> keepIds(ext.baseIds.begin(), ext.baseIds.end());
  for (int v : ext.fiberOrder)
    if (alg->gen(v).degree % 2 == 0) keepIds.push_back(v);
  std::vector<Generator> targetGens;
  for (int id : keepIds)
    targetGens.push_back(Generator{alg->gen(id).name, alg->gen(id).degree});
  const AlgebraPtr targetAlg = makeAlgebra(std::move(targetGens));
  const auto remap = [&](const Element& e) {
    Element out = Element::zero(targetAlg);
    for (const auto& [m, c] : e.terms()) {
      Monomial::Factors factors;
      for (const auto& [id, exp] : m.factors()) {
        const std::optional<int> tid = targetAlg->findGen(alg->gen(id).name);
        if (!tid)
          throw TheoryViolationError(std::string(op) +
                                     ": an odd generator appears in a "
                                     "quotient relation");
        factors.emplace_back(*tid, exp);
      }
      out.addTerm(Monomial::fromFactors(*targetAlg, std::move(factors)), c);
    }
    return out;
  };
  std::vector<Element> relations;
  for (const Element& r : ext.total.relations) relations.push_back(remap(r));
  for (int fid : pm.oddIds) {
    const Element& dfw = fm.differential.image(fid);
    if (!dfw.isZero()) relations.push_back(remap(liftFiberElement(ext, dfw)));
  }
  const Cdga quotient = Cdga::formal(targetAlg, std::move(relations));
  const Window WQ(quotient, capT);

  std::map<int, Element> images;
  for (int id : keepIds)
    images.emplace(id, Element::fromGenerator(
                           targetAlg, *targetAlg->findGen(alg->gen(id).name)));
  DGMorphism projection(ext.total, quotient, std::move(images));
  const QuasiIsoReport qi = isQuasiIso(projection, capT);
  if (!qi.ok)
    throw TheoryViolationError(
        std::string(op) + ": the projection onto the quotient is not a "
        "quasi-isomorphism (" + qi.reason + ")");

  // The ideal really is the kernel: it dies in the quotient, and the
  // dimension count below shows it is the whole kernel.
  for (const auto& [n, slice] : idealSlices) {
    (void)n;
    for (const Element& e : slice)
      if (!WQ.normalForm(projection.apply(e)).isZero())
        throw TheoryViolationError(std::string(op) +
                                   ": an ideal element survives in the "
                                   "quotient");
  }

  // --- D-stability and degreewise acyclicity of the ideal. ----------------
  std::map<int, int> imageRank;
  for (int n = 0; n < capT; ++n) {
    std::vector<RVec> dCols;
    const auto it = idealSlices.find(n);
    if (it != idealSlices.end()) {
      for (const Element& e : it->second) {
        const Element de = WT.normalForm(
            applyDifferential(ext.total.differential, e));
        if (de.isZero()) continue;
        const RVec coords = WT.coordinates(de, n + 1);
        if (!idealEch[n + 1].contains(coords))
          throw TheoryViolationError(
              std::string(op) + ": the ideal is not D-stable in degree " +
              std::to_string(n));
        dCols.push_back(coords);
      }
    }
    if (dCols.empty()) {
      imageRank[n] = 0;
    } else {
      RMat stacked(dCols.front().rows(),
                   static_cast<Eigen::Index>(dCols.size()));
      for (size_t j = 0; j < dCols.size(); ++j)
        stacked.col(static_cast<Eigen::Index>(j)) = dCols[j];
      imageRank[n] = static_cast<int>(linalg::rank(stacked));
    }
  }

  std::vector<DegreeExactness> certificate;
  for (int n = 0; n <= capT; ++n) {
    DegreeExactness row;
    row.degree = n;
    row.idealDim = idealDim[n];
    row.quotientDim = WQ.quotientDim(n);
    row.totalDim = WT.quotientDim(n);
    if (row.idealDim + row.quotientDim != row.totalDim)
      throw TheoryViolationError(
          std::string(op) + ": ideal and quotient dimensions do not add up "
          "to the total in degree " + std::to_string(n));
    if (n < capT) {
      row.kernelRank = row.idealDim - imageRank[n];
      row.boundaryRank = n == 0 ? 0 : imageRank[n - 1];
      if (row.kernelRank != row.boundaryRank)
        throw TheoryViolationError(
            std::string(op) + ": the ideal fails acyclicity in degree " +
            std::to_string(n) + " (kernel rank " +
            std::to_string(row.kernelRank) + ", boundary rank " +
            std::to_string(row.boundaryRank) + ")");
    }
    certificate.push_back(row);
  }

  const int nilpotency = cupLength(WQ);
  return AcyclicIdealQuotient{std::move(idealSlices), quotient,
                              std::move(projection), nilpotency, capT,
                              std::move(certificate)};
}

InvariantReport invariantReport(const Cdga& freeModel, int cap,
                                const FormalityCertificate* cert) {
  const Window H(freeModel, cap);
  const int cup = cupLength(H);
  const ToomerReport word = toomer(H);
  if (cup > word.value)
    throw TheoryViolationError(
        "invariantReport: cup length " + std::to_string(cup) +
        " exceeds the word-filtration value " + std::to_string(word.value));

  InvariantReport report;
  report.cup0 = cup;
  report.e0 = word.value;
  report.provenance.push_back(
      {"cup0", cup, "largest nonzero product of positive classes in the window"});
  report.provenance.push_back(
      {"e0", word.value,
       word.minimalModel
           ? "word-length filtration of the minimal model"
           : "word-length filtration of a non-minimal free model; "
             "model-dependent unless minimal"});

  if (cert) {
    const int pinned = nil0(*cert, word.value);
    if (pinned != cup)
      throw TheoryViolationError(
          "invariantReport: the certified value " + std::to_string(pinned) +
          " disagrees with the cup length " + std::to_string(cup) +
          " on a formal space");
    report.nil0 = pinned;
    report.cat0 = pinned;
    report.provenance.push_back(
        {"nil0", pinned,
         "formality collapse: cup length of the certified cohomology, "
         "cross-checked against the word filtration"});
    report.provenance.push_back(
        {"cat0", pinned, "pinned between e0 and cl0 by the formality collapse"});
  }
  return report;
}

InvariantReport invariantReportOfFormal(const Cdga& formalModel, int cap) {
  static const char* op = "invariantReportOfFormal";
  if (!formalModel.differential.isZero())
    throw PreconditionError(std::string(op) +
                            ": the differential does not vanish; this entry "
                            "point is for formal CDGAs presented as their own "
                            "cohomology");
  const Window H(formalModel, cap);
  const int cup = cupLength(H);
  std::optional<int> crossCheck;
  if (formalModel.relations.empty()) crossCheck = toomer(H).value;

  const FormalityCertificate cert = selfCertificate(formalModel, cap);
  const int pinned = nil0(cert, crossCheck, cap);
  if (pinned != cup)
    throw TheoryViolationError(std::string(op) +
                               ": the self-certified value disagrees with "
                               "the cup length");

  InvariantReport report;
  report.cup0 = cup;
  report.e0 = pinned;
  report.nil0 = pinned;
  report.cat0 = pinned;
  report.provenance.push_back(
      {"cup0", cup, "largest nonzero product of positive classes in the window"});
  report.provenance.push_back(
      {"e0", pinned,
       crossCheck ? "formality collapse, cross-checked against the word "
                    "filtration of the free formal model"
                  : "formality collapse on a zero-differential model"});
  report.provenance.push_back(
      {"nil0", pinned, "formality collapse on a zero-differential model"});
  report.provenance.push_back(
      {"cat0", pinned, "pinned between e0 and cl0 by the formality collapse"});
  return report;
}

InvariantReport invariantReportOfCertified(const Cdga& model, int cap,
                                           const FormalityCertificate& cert) {
  static const char* op = "invariantReportOfCertified";
  if (model.relations.empty()) return invariantReport(model, cap, &cert);

  const Window H(model, cap);
  const int cup = cupLength(H);
  // The cup length is itself the independent cross-check: on a certified
  // formal model the collapsed value must reproduce it exactly.
  const int pinned = nil0(cert);
  if (pinned != cup)
    throw TheoryViolationError(
        std::string(op) +
        ": the certified value disagrees with the model's cup length");

  InvariantReport report;
  report.cup0 = cup;
  report.e0 = pinned;
  report.nil0 = pinned;
  report.cat0 = pinned;
  report.provenance.push_back(
      {"cup0", cup, "largest nonzero product of positive classes in the window"});
  report.provenance.push_back(
      {"e0", pinned,
       "pinned by the formality certificate; the word filtration needs a "
       "relation-free model"});
  report.provenance.push_back(
      {"nil0", pinned,
       "cup length of the certified cohomology, cross-checked against the "
       "model's own cup length"});
  report.provenance.push_back(
      {"cat0", pinned, "pinned between e0 and cl0 by the formality collapse"});
  return report;
}

void attachConeLengthBound(InvariantReport& report,
                           const AcyclicIdealQuotient& bound) {
  if (report.e0 > bound.nilpotencyLength)
    throw TheoryViolationError(
        "attachConeLengthBound: e0 = " + std::to_string(report.e0) +
        " exceeds the cone-length bound " +
        std::to_string(bound.nilpotencyLength));
  if (report.nil0 && *report.nil0 > bound.nilpotencyLength)
    throw TheoryViolationError(
        "attachConeLengthBound: nil0 exceeds the cone-length bound");
  report.cl0Upper = bound.nilpotencyLength;
  report.provenance.push_back({"cl0Upper", bound.nilpotencyLength,
                               "nilpotency of the acyclic-quotient model"});
}

std::vector<InequalityVerdict> checkFibrationInequalities(
    const InvariantReport& total, const InvariantReport& base,
    const InvariantReport& fiber, const FibrationContext& context) {
  const auto need = [](const std::optional<int>& field, const char* what,
                       const char* rule) -> int {
    if (!field)
      throw PreconditionError(
          std::string("checkFibrationInequalities: the rule '") + rule +
          "' applies but the " + what + " is missing from its report");
    return *field;
  };

  std::vector<InequalityVerdict> verdicts;
  const std::string na = "hypotheses not established for this fibration";

  {
    InequalityVerdict v;
    v.rule = "nil additivity over a formal base";
    v.applicable = context.tncz && context.baseFormal &&
                   context.fiberPositivelyElliptic;
    if (v.applicable) {
      const int tE = need(total.nil0, "nil0 of the total space", v.rule.c_str());
      const int tB = need(base.nil0, "nil0 of the base", v.rule.c_str());
      const int tF = need(fiber.nil0, "nil0 of the fiber", v.rule.c_str());
      v.holds = tE >= tB + tF;
      v.detail = joinNumbers("nil0(E)", tE, ">=", tB, tF, "nil0(B) + nil0(F)");
    } else {
      v.detail = na;
    }
    verdicts.push_back(std::move(v));
  }
  {
    InequalityVerdict v;
    v.rule = "cup-length bound over a TNCZ fibration";
    v.applicable = context.tncz && context.fiberPositivelyElliptic;
    if (v.applicable) {
      const int tF = need(fiber.nil0, "nil0 of the fiber", v.rule.c_str());
      v.holds = total.cup0 >= base.cup0 + tF;
      v.detail = joinNumbers("cup0(E)", total.cup0, ">=", base.cup0, tF,
                             "cup0(B) + nil0(F)");
    } else {
      v.detail = na;
    }
    verdicts.push_back(std::move(v));
  }
  {
    InequalityVerdict v;
    v.rule = "Toomer bound over a TNCZ fibration";
    v.applicable = context.tncz && context.fiberPositivelyElliptic;
    if (v.applicable) {
      const int tF = need(fiber.nil0, "nil0 of the fiber", v.rule.c_str());
      v.holds = total.e0 >= base.e0 + tF;
      v.detail =
          joinNumbers("e0(E)", total.e0, ">=", base.e0, tF, "e0(B) + nil0(F)");
    } else {
      v.detail = na;
    }
    verdicts.push_back(std::move(v));
  }
  {
    InequalityVerdict v;
    v.rule = "odd-wedge Toomer bound";
    v.applicable = context.baseOddWedge && context.fiberPositivelyElliptic;
    if (v.applicable) {
      v.holds = total.e0 >= 1 + fiber.e0;
      v.detail = joinNumbers("e0(E)", total.e0, ">=", 1, fiber.e0, "1 + e0(F)");
    } else {
      v.detail = na;
    }
    verdicts.push_back(std::move(v));
  }
  {
    InequalityVerdict v;
    v.rule = "odd-wedge nil collapse";
    v.applicable = context.tncz && context.baseOddWedge &&
                   context.fiberPositivelyElliptic;
    if (v.applicable) {
      const int tE = need(total.nil0, "nil0 of the total space", v.rule.c_str());
      const int tF = need(fiber.nil0, "nil0 of the fiber", v.rule.c_str());
      v.holds = tE == 1 + tF;
      v.detail = joinNumbers("nil0(E)", tE, "==", 1, tF, "1 + nil0(F)");
    } else {
      v.detail = na;
    }
    verdicts.push_back(std::move(v));
  }
  {
    InequalityVerdict v;
    v.rule = "odd-wedge cone-length collapse";
    v.applicable = context.baseOddWedge && context.fiberPositivelyElliptic;
    if (v.applicable) {
      const int cl = need(total.cl0Upper, "cone-length bound of the total "
                          "space", v.rule.c_str());
      const int tF = need(fiber.nil0, "nil0 of the fiber", v.rule.c_str());
      v.holds = total.e0 == cl && total.e0 == tF + 1;
      v.detail = "e0(E) = " + std::to_string(total.e0) + ", cl0Upper(E) = " +
                 std::to_string(cl) + ", nil0(F) + 1 = " +
                 std::to_string(tF + 1) + "; all three must agree";
    } else {
      v.detail = na;
    }
    verdicts.push_back(std::move(v));
  }
  return verdicts;
}

}  // namespace rht
