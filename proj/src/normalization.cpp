#include "rht/normalization.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rht/errors.hpp"
#include "rht/pure_model.hpp"

namespace rht {

namespace {

std::vector<bool> baseMask(const KSExtension& ext) {
  std::vector<bool> mask(static_cast<size_t>(ext.total.algebra->size()), false);
  for (int id : ext.baseIds) mask[static_cast<size_t>(id)] = true;
  return mask;
}

bool hasBaseFactor(const std::vector<bool>& mask, const Monomial& m) {
  for (const auto& [id, exp] : m.factors()) {
    (void)exp;
    if (mask[static_cast<size_t>(id)]) return true;
  }
  return false;
}

int baseDegreeOf(const FreeGCA& alg, const std::vector<bool>& mask,
                 const Monomial& m) {
  int deg = 0;
  for (const auto& [id, exp] : m.factors())
    if (mask[static_cast<size_t>(id)]) deg += alg.gen(id).degree * exp;
  return deg;
}

int maxGenDegree(const FreeGCA& alg) {
  int best = 0;
  for (const Generator& g : alg.generators()) best = std::max(best, g.degree);
  return best;
}

void requireAscendingKSOrder(const KSExtension& ext, const char* op) {
  int prev = 0;
  for (int id : ext.fiberOrder) {
    const int deg = ext.total.algebra->gen(id).degree;
    if (deg < prev)
      throw PreconditionError(std::string(op) +
                              " requires the degree-ascending KS order");
    prev = deg;
  }
}

void requireValid(const KSExtension& ext, const char* op) {
  const ExtensionReport rep = validate(ext);
  if (!rep.ok)
    throw PreconditionError(std::string(op) +
                            ": the extension is invalid: " + rep.failure);
}

// Remaps an element of the total algebra containing no base generator onto
// the fiber algebra. Both algebras sort generators canonically by (degree,
// name), so the relative factor order — hence every Koszul sign — is
// preserved by the name map.
Element toFiberAlgebra(const KSExtension& ext, const AlgebraPtr& fibAlg,
                       const Element& e) {
  Element out = Element::zero(fibAlg);
  for (const auto& [m, c] : e.terms()) {
    Monomial::Factors factors;
    for (const auto& [id, exp] : m.factors()) {
      const std::string& name = ext.total.algebra->gen(id).name;
      const std::optional<int> fid = fibAlg->findGen(name);
      if (!fid)
        throw TheoryViolationError(
            "a base generator survived the fiber projection: " + name);
      factors.emplace_back(*fid, exp);
    }
    out.addTerm(Monomial::fromFactors(*fibAlg, std::move(factors)), c);
  }
  return out;
}

// Splits a total monomial as (base part) * (fiber part) with the Koszul sign
// s such that m = s * basePart * fiberPart.
struct SplitMonomial {
  Monomial basePart, fiberPart;
  int sign = 1;
};

SplitMonomial splitBaseFiber(const FreeGCA& alg, const std::vector<bool>& mask,
                             const Monomial& m) {
  Monomial::Factors bf, ff;
  for (const auto& [id, exp] : m.factors())
    (mask[static_cast<size_t>(id)] ? bf : ff).emplace_back(id, exp);
  SplitMonomial s;
  s.basePart = Monomial::fromFactors(alg, std::move(bf));
  s.fiberPart = Monomial::fromFactors(alg, std::move(ff));
  const auto prod = multiplyMonomials(alg, s.basePart, s.fiberPart);
  if (!prod || prod->monomial != m)
    throw TheoryViolationError("monomial base/fiber split failed to recombine");
  s.sign = prod->sign;
  return s;
}

// Certifies the fiber as a positively elliptic pure model (the class in which
// every interior solve below is guaranteed to succeed).
PureModel certifyFiber(const KSExtension& ext, std::optional<int> cap,
                       const char* op) {
  const Cdga fm = ext.fiberModel();
  PureModel pm = makePureModel(fm.algebra, fm.differential);
  const int capE = std::max(cap.value_or(pm.formalDimension),
                            std::max(pm.formalDimension, 0));
  const EulerReport er = eulerReport(pm, capE);
  if (!er.positivelyElliptic)
    throw PreconditionError(
        std::string(op) + ": the fiber is not positively elliptic (Euler "
        "characteristic " + std::to_string(er.euler) + ")");
  return pm;
}

// Why a wedge base is rejected, or nullopt when it is one: zero
// differential, all generators odd, and every pairwise generator product
// vanishing modulo the relations. Longer products of positive classes then
// vanish as well, since each contains a pairwise factor.
std::optional<std::string> oddWedgeObjection(const Cdga& base) {
  if (!base.differential.isZero())
    return std::string("the base differential does not vanish");
  const AlgebraPtr& baseAlg = base.algebra;
  const auto& gens = baseAlg->generators();
  for (const Generator& gn : gens)
    if (gn.degree % 2 == 0)
      return "the base class " + gn.name + " has even degree";
  if (gens.size() > 1) {
    const Window WB(base, 2 * maxGenDegree(*baseAlg));
    for (size_t i = 0; i < gens.size(); ++i) {
      for (size_t j = i + 1; j < gens.size(); ++j) {
        const Element prod =
            Element::fromGenerator(baseAlg, static_cast<int>(i)) *
            Element::fromGenerator(baseAlg, static_cast<int>(j));
        if (!WB.normalForm(prod).isZero())
          return "the base product " + gens[i].name + " * " + gens[j].name +
                 " does not vanish";
      }
    }
  }
  return std::nullopt;
}

// Replaces every differential image by its normal form modulo the lifted
// base relations. Over a quotient base the differential is only well-defined
// modulo the relation ideal; this picks the reduced representative and
// leaves relation-free totals untouched.
KSExtension reduceImages(const KSExtension& ext, bool bigraded) {
  const AlgebraPtr& alg = ext.total.algebra;
  std::map<int, Element> images = ext.total.differential.images();
  if (!ext.total.relations.empty()) {
    const Window W(ext.total, maxGenDegree(*alg) + 1);
    for (auto it = images.begin(); it != images.end();) {
      Element reduced = W.normalForm(it->second);
      if (reduced.isZero()) {
        it = images.erase(it);
      } else {
        it->second = std::move(reduced);
        ++it;
      }
    }
  }
  KSExtension out = ext;
  out.total.differential = Differential(alg, std::move(images), bigraded);
  return out;
}

// One even-generator step shared by trivializeOverOddWedge and
// filteredNormalize: replaces v by the TNCZ-guaranteed closed cocycle
// v + beta with beta supported on base-positive monomials.
void closeEvenGenerator(KSExtension& cur, BasisChange& acc, int v,
                        const std::vector<bool>& mask, int capW,
                        const char* op) {
  const Element& img = cur.total.differential.image(v);
  if (img.isZero()) return;
  const Window W(cur.total, capW);
  if (W.normalForm(img).isZero()) return;  // zero modulo the base relations

  SliceConstraints keepBasePositive;
  keepBasePositive.keep = [&mask](const FreeGCA&, const Monomial& m) {
    return hasBaseFactor(mask, m);
  };
  const std::optional<Element> beta =
      W.solveExact(-img, keepBasePositive);
  if (!beta) {
    const std::string name = cur.total.algebra->gen(v).name;
    throw TheoryViolationError(
        std::string(op) + ": no closed representative " + name +
        " + beta with base-positive beta exists in degree " +
        std::to_string(cur.total.algebra->gen(v).degree) +
        "; this contradicts the TNCZ certificate");
  }
  BasisChange step;
  step.substitutions.emplace(v, *beta);
  cur = changeBasis(cur, step);
  acc = composeBasisChanges(cur, acc, step);
}

// One odd-generator reduction pass shared by trivializeOverOddWedge
// (stripLowerZero: remove every base-positive term) and filteredNormalize
// (keep base-positive terms whose fiber part is polynomial). Repeatedly
// cancels the minimal-base-degree slice of the residue; each substitution
// raises that minimal degree strictly, so the loop terminates within the
// generator's degree.
void reduceOddGenerator(KSExtension& cur, BasisChange& acc, int v,
                        const std::vector<bool>& mask, int capW,
                        const Window& fiberWindow, const AlgebraPtr& fibAlg,
                        bool stripLowerZero, const char* op) {
  const AlgebraPtr& alg = cur.total.algebra;
  const std::string vname = alg->gen(v).name;
  int prevBaseDegree = 0;
  for (int round = 0;; ++round) {
    if (round > 32)
      throw TheoryViolationError(std::string(op) + ": the reduction of " +
                                 vname + " failed to terminate");
    const Window W(cur.total, capW);
    const Element strip =
        W.normalForm(cur.total.differential.image(v))
            .filtered([&](const Monomial& m) {
              if (!hasBaseFactor(mask, m)) return false;
              return stripLowerZero || lowerDegreeOf(*alg, m) >= 1;
            });
    if (strip.isZero()) return;

    int minBase = 0;
    for (const auto& [m, c] : strip.terms()) {
      (void)c;
      const int bd = baseDegreeOf(*alg, mask, m);
      if (minBase == 0 || bd < minBase) minBase = bd;
    }
    if (round > 0 && minBase <= prevBaseDegree)
      throw TheoryViolationError(std::string(op) + ": the reduction of " +
                                 vname + " made no progress at base degree " +
                                 std::to_string(minBase));
    prevBaseDegree = minBase;

    // Decompose the minimal slice as sum_mb mb * chi_mb over the base
    // monomials mb actually present.
    std::map<Monomial, Element> components;
    for (const auto& [m, c] : strip.terms()) {
      if (baseDegreeOf(*alg, mask, m) != minBase) continue;
      const SplitMonomial split = splitBaseFiber(*alg, mask, m);
      const Element piece =
          toFiberAlgebra(cur, fibAlg,
                         Element::term(alg, split.fiberPart, c * Rational(split.sign)));
      auto it = components.find(split.basePart);
      if (it == components.end())
        components.emplace(split.basePart, piece);
      else
        it->second += piece;
    }

    Element eta = Element::zero(alg);
    for (const auto& [mb, chi] : components) {
      if (chi.isZero()) continue;
      if (!fiberWindow.isCocycle(chi))
        throw TheoryViolationError(
            std::string(op) + ": the residue of " + vname + " along " +
            toString(*alg, mb) + " is not a fiber cocycle");
      const std::optional<Element> sol = fiberWindow.solveExact(chi);
      if (!sol)
        throw TheoryViolationError(
            std::string(op) + ": the residue of " + vname + " along " +
            toString(*alg, mb) + " is a non-bounding fiber cocycle in degree " +
            std::to_string(chi.homogeneousDegree().value_or(-1)) +
            "; this contradicts the fiber certificate");
      const int mbDegree = degreeOf(*alg, mb);
      const Rational sign = (mbDegree % 2 == 0) ? Rational(-1) : Rational(1);
      eta += Element::term(alg, mb, sign) * liftFiberElement(cur, *sol);
    }
    if (eta.isZero())
      throw TheoryViolationError(std::string(op) + ": the reduction of " +
                                 vname + " produced an empty substitution");
    BasisChange step;
    step.substitutions.emplace(v, std::move(eta));
    cur = changeBasis(cur, step);
    acc = composeBasisChanges(cur, acc, step);
  }
}

}  // namespace

NormalizedExtension normalizeOverOddSphere(const KSExtension& ext,
                                           std::optional<int> cap) {
  static const char* op = "normalizeOverOddSphere";
  const AlgebraPtr& alg = ext.total.algebra;
  if (!ext.base.relations.empty())
    throw PreconditionError(std::string(op) + ": the base must be free");
  if (ext.baseIds.size() != 1)
    throw PreconditionError(std::string(op) +
                            ": the base must have exactly one generator");
  const int u = ext.baseIds.front();
  if (alg->gen(u).degree % 2 == 0)
    throw PreconditionError(std::string(op) + ": the base generator " +
                            alg->gen(u).name + " must have odd degree");
  if (!ext.base.differential.isZero())
    throw PreconditionError(std::string(op) +
                            ": the base differential must vanish");
  requireAscendingKSOrder(ext, op);
  requireValid(ext, op);
  if (!isDecomposable(ext.total.differential))
    throw PreconditionError(std::string(op) +
                            ": the total differential has a linear part");
  certifyFiber(ext, cap, op);

  const Cdga fm = ext.fiberModel();
  const int uDeg = alg->gen(u).degree;
  int capSolve = 1;
  for (int id : ext.fiberOrder) {
    const Generator& g = alg->gen(id);
    if (g.degree % 2 == 0)
      capSolve = std::max(capSolve, g.degree + 1 - uDeg);
  }
  const Window fiberWindow(fm, capSolve);
  const Element uElt = Element::fromGenerator(alg, u);
  const Monomial uMono = uElt.terms().begin()->first;

  BasisChange bc;
  for (int v : ext.fiberOrder) {
    if (alg->gen(v).degree % 2 != 0) continue;
    const Element& img = ext.total.differential.image(v);
    if (img.isZero()) continue;

    // D(v) = u * chi: every monomial carries u exactly once because the
    // fiber part of D(v) is d_F(v) = 0 and u^2 = 0.
    Element chi = Element::zero(fm.algebra);
    for (const auto& [m, c] : img.terms()) {
      if (m.exponentOf(u) != 1)
        throw TheoryViolationError(
            std::string(op) + ": D(" + alg->gen(v).name +
            ") has a term without the base generator");
      Monomial::Factors factors;
      for (const auto& [id, exp] : m.factors())
        if (id != u) factors.emplace_back(id, exp);
      const Monomial rest = Monomial::fromFactors(*alg, std::move(factors));
      const auto prod = multiplyMonomials(*alg, uMono, rest);
      if (!prod || prod->monomial != m)
        throw TheoryViolationError(std::string(op) +
                                   ": failed to factor out the base generator");
      chi += toFiberAlgebra(ext, fm.algebra,
                            Element::term(alg, rest, c * Rational(prod->sign)));
    }
    const Element chiPlus = chi.filtered([&](const Monomial& m) {
      return lowerDegreeOf(*fm.algebra, m) >= 1;
    });
    if (chiPlus.isZero()) continue;
    if (!fiberWindow.isCocycle(chiPlus))
      throw TheoryViolationError(std::string(op) +
                                 ": the positive-lower part of D(" +
                                 alg->gen(v).name + ")/u is not a cocycle");
    const std::optional<Element> eta = fiberWindow.solveExact(chiPlus);
    if (!eta)
      throw TheoryViolationError(
          std::string(op) + ": the positive-lower part of D(" +
          alg->gen(v).name + ")/u is a non-bounding cocycle; this contradicts "
          "the positive ellipticity of the fiber");
    bc.substitutions.emplace(v, uElt * liftFiberElement(ext, *eta));
  }

  NormalizedExtension out{bc.empty() ? ext : changeBasis(ext, bc),
                          std::move(bc)};

  // Post: D(V^even) <= u * Lambda^+(V^even), syntactically.
  for (int v : out.extension.fiberOrder) {
    if (alg->gen(v).degree % 2 != 0) continue;
    for (const auto& [m, c] : out.extension.total.differential.image(v).terms()) {
      (void)c;
      if (m.exponentOf(u) != 1 || lowerDegreeOf(*alg, m) != 0 ||
          wordLengthOf(m) < 2)
        throw TheoryViolationError(
            std::string(op) + ": D(" + alg->gen(v).name +
            ") is not of the form u * (positive polynomial part) after the "
            "substitution");
    }
  }
  return out;
}

NormalizedExtension trivializeOverOddWedge(const KSExtension& ext,
                                           std::optional<int> cap) {
  static const char* op = "trivializeOverOddWedge";
  const AlgebraPtr& alg = ext.total.algebra;
  if (const auto objection = oddWedgeObjection(ext.base))
    throw PreconditionError(std::string(op) + ": " + *objection);
  requireAscendingKSOrder(ext, op);
  requireValid(ext, op);
  certifyFiber(ext, std::nullopt, op);
  const TNCZReport tncz = checkTNCZ(ext, cap);
  if (!tncz.tncz)
    throw PreconditionError(
        std::string(op) + ": the extension is not TNCZ (" +
        (tncz.reason.empty()
             ? "a fiber class is lost in degree " + std::to_string(tncz.failingDegree)
             : tncz.reason) +
        ")");

  const Cdga fm = ext.fiberModel();
  const std::vector<bool> mask = baseMask(ext);
  const int capW = maxGenDegree(*alg) + 1;
  const Window fiberWindow(fm, maxGenDegree(*fm.algebra) + 1);

  KSExtension cur = ext;
  BasisChange acc;
  const std::vector<int> order = cur.fiberOrder;
  for (int v : order) {
    if (alg->gen(v).degree % 2 == 0)
      closeEvenGenerator(cur, acc, v, mask, capW, op);
    else
      reduceOddGenerator(cur, acc, v, mask, capW, fiberWindow, fm.algebra,
                         /*stripLowerZero=*/true, op);
  }

  NormalizedExtension out{reduceImages(cur, false), std::move(acc)};
  requireValid(out.extension, op);
  for (int v : out.extension.fiberOrder) {
    const Element want = liftFiberElement(out.extension, fm.differential.image(
                                              *fm.algebra->findGen(alg->gen(v).name)));
    if (!(out.extension.total.differential.image(v) == want))
      throw TheoryViolationError(std::string(op) + ": D(" + alg->gen(v).name +
                                 ") differs from the fiber differential after "
                                 "the reduction");
  }
  return out;
}

NormalizedExtension filteredNormalize(const KSExtension& ext,
                                      std::optional<int> cap) {
  static const char* op = "filteredNormalize";
  const AlgebraPtr& alg = ext.total.algebra;
  if (!ext.base.differential.isZero())
    throw PreconditionError(std::string(op) +
                            ": the base must be formal with zero differential");
  requireAscendingKSOrder(ext, op);
  requireValid(ext, op);
  certifyFiber(ext, std::nullopt, op);
  const TNCZReport tncz = checkTNCZ(ext, cap);
  if (!tncz.tncz)
    throw PreconditionError(
        std::string(op) + ": the extension is not TNCZ (" +
        (tncz.reason.empty()
             ? "a fiber class is lost in degree " + std::to_string(tncz.failingDegree)
             : tncz.reason) +
        ")");

  const Cdga fm = ext.fiberModel();
  const std::vector<bool> mask = baseMask(ext);
  const int capW = maxGenDegree(*alg) + 1;
  const Window fiberWindow(fm, maxGenDegree(*fm.algebra) + 1);

  KSExtension cur = ext;
  BasisChange acc;
  const std::vector<int> order = cur.fiberOrder;
  // Stage 0: every even fiber generator becomes closed.
  for (int v : order)
    if (alg->gen(v).degree % 2 == 0) closeEvenGenerator(cur, acc, v, mask, capW, op);
  // Stage 1: odd images are stripped of every term with an odd fiber factor.
  for (int v : order)
    if (alg->gen(v).degree % 2 != 0)
      reduceOddGenerator(cur, acc, v, mask, capW, fiberWindow, fm.algebra,
                         /*stripLowerZero=*/false, op);

  NormalizedExtension out{reduceImages(cur, true), std::move(acc)};
  requireValid(out.extension, op);
  return out;
}

// Shared core of the two formality certificates: project the lower-graded
// CDGA `total` onto the formal quotient generated by `keepIds` modulo the
// total's relations and the images of `oddGens`, verify the projection as a
// quasi-isomorphism through `capQ`, and verify that every positive-lower
// cocycle bounds from strictly higher lower degree.
static FormalityCertificate certifyFormalQuotient(const Cdga& total,
                                                  const std::vector<int>& keepIds,
                                                  const std::vector<int>& oddGens,
                                                  int capQ, const char* op) {
  const AlgebraPtr& alg = total.algebra;
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
                                     ": an odd generator appears in an image "
                                     "of lower degree zero");
        factors.emplace_back(*tid, exp);
      }
      out.addTerm(Monomial::fromFactors(*targetAlg, std::move(factors)), c);
    }
    return out;
  };

  std::vector<Element> relations;
  for (const Element& r : total.relations) relations.push_back(remap(r));
  for (int v : oddGens) {
    const Element& img = total.differential.image(v);
    if (!img.isZero()) relations.push_back(remap(img));
  }
  const Cdga target = Cdga::formal(targetAlg, std::move(relations));

  std::map<int, Element> images;
  for (int id : keepIds)
    images.emplace(id, Element::fromGenerator(targetAlg, *targetAlg->findGen(
                                                  alg->gen(id).name)));
  DGMorphism p(total, target, std::move(images));

  const QuasiIsoReport qi = isQuasiIso(p, capQ);
  if (!qi.ok)
    throw TheoryViolationError(
        std::string(op) + ": the projection onto the formal quotient is not a "
        "quasi-isomorphism (" + qi.reason + ")");

  // The key vanishing: every positive-lower cocycle bounds, verified degree
  // by degree through the cap.
  const Window W(total, capQ);
  for (int n = 1; n <= capQ; ++n) {
    const std::vector<Monomial>& basis = W.quotientBasis(n);
    int maxLower = 0;
    for (const Monomial& m : basis)
      maxLower = std::max(maxLower, lowerDegreeOf(*alg, m));
    for (int lower = 1; lower <= maxLower; ++lower) {
      std::vector<int> cols;
      for (size_t i = 0; i < basis.size(); ++i)
        if (lowerDegreeOf(*alg, basis[i]) == lower)
          cols.push_back(static_cast<int>(i));
      if (cols.empty()) continue;
      const RMat& d = W.dMatrix(n);
      RMat restricted(d.rows(), static_cast<int>(cols.size()));
      for (size_t j = 0; j < cols.size(); ++j)
        restricted.col(static_cast<int>(j)) = d.col(cols[j]);
      const RMat kernel = linalg::kernelBasis(restricted);
      for (Eigen::Index kc = 0; kc < kernel.cols(); ++kc) {
        Element z = Element::zero(alg);
        for (size_t j = 0; j < cols.size(); ++j)
          if (kernel(static_cast<Eigen::Index>(j), kc) != Rational(0))
            z.addTerm(basis[static_cast<size_t>(cols[j])],
                      kernel(static_cast<Eigen::Index>(j), kc));
        SliceConstraints fromHigherLower;
        fromHigherLower.lowerDegree = lower + 1;
        if (!W.solveExact(z, fromHigherLower))
          throw TheoryViolationError(
              std::string(op) + ": a cocycle of positive lower degree " +
              std::to_string(lower) + " survives in degree " + std::to_string(n));
      }
    }
  }
  return FormalityCertificate{std::move(p), capQ};
}

FormalityCertificate formalityCertificateOfTotal(const KSExtension& ext,
                                                 std::optional<int> cap) {
  static const char* op = "formalityCertificateOfTotal";
  const AlgebraPtr& alg = ext.total.algebra;
  if (!ext.total.differential.bigraded())
    throw PreconditionError(
        std::string(op) + ": the total differential is not bigraded; apply "
        "filteredNormalize first");

  // Target: base generators and even fiber generators, modulo the base
  // relations and the odd-generator images.
  std::vector<int> keepIds(ext.baseIds.begin(), ext.baseIds.end());
  std::vector<int> oddFiber;
  for (int v : ext.fiberOrder) {
    if (alg->gen(v).degree % 2 == 0)
      keepIds.push_back(v);
    else
      oddFiber.push_back(v);
  }
  const int capQ = cap.value_or(maxGenDegree(*alg) + 2);
  return certifyFormalQuotient(ext.total, keepIds, oddFiber, capQ, op);
}

FormalityCertificate formalityCertificateOfPure(const PureModel& model,
                                                std::optional<int> cap) {
  static const char* op = "formalityCertificateOfPure";
  const EulerReport er =
      eulerReport(model, std::max(model.formalDimension, 0));
  if (!er.positivelyElliptic)
    throw PreconditionError(
        std::string(op) + ": the pure model is not positively elliptic "
        "(Euler characteristic " + std::to_string(er.euler) + "), so its "
        "bigraded projection does not certify formality");
  const int capQ = cap.value_or(model.formalDimension + 2);
  return certifyFormalQuotient(model.asCdga(), model.evenIds, model.oddIds,
                               capQ, op);
}

FormalityCertificate selfCertificate(const Cdga& formal, int cap) {
  static const char* op = "selfCertificate";
  if (!formal.differential.isZero())
    throw PreconditionError(
        std::string(op) + ": the differential does not vanish; certify "
        "through one of the normal forms instead");
  std::map<int, Element> images;
  const int genCount = static_cast<int>(formal.algebra->generators().size());
  for (int id = 0; id < genCount; ++id)
    images.emplace(id, Element::fromGenerator(formal.algebra, id));
  DGMorphism idm(formal, formal, std::move(images));
  const QuasiIsoReport qi = isQuasiIso(idm, cap);
  if (!qi.ok)
    throw TheoryViolationError(std::string(op) +
                               ": the identity failed its own verification (" +
                               qi.reason + ")");
  return FormalityCertificate{std::move(idm), cap};
}

PureModel certifyPositivelyEllipticFiber(const KSExtension& ext,
                                         std::optional<int> cap) {
  return certifyFiber(ext, cap, "certifyPositivelyEllipticFiber");
}

bool isOddWedgeBase(const Cdga& base) {
  return !oddWedgeObjection(base).has_value();
}

}  // namespace rht
