#include "rht/ks_extension.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

namespace rht {
namespace {

// Remaps an element between algebras by generator name. Both algebras keep
// their generators in canonical (degree, name) order, so shared generators
// appear in the same relative order on both sides and the remap never
// reorders odd factors: no Koszul signs arise.
Element remapByName(const Element& e, const AlgebraPtr& to) {
  const FreeGCA& src = *e.algebra();
  Element out = Element::zero(to);
  for (const auto& [m, c] : e.terms()) {
    Monomial::Factors factors;
    for (const auto& [id, exp] : m.factors()) {
      const std::optional<int> toId = to->findGen(src.gen(id).name);
      if (!toId)
        throw DomainMismatchError("generator " + src.gen(id).name +
                                  " does not exist in the target algebra");
      factors.emplace_back(*toId, exp);
    }
    out.addTerm(Monomial::fromFactors(*to, std::move(factors)), c);
  }
  return out;
}

// Multiplicative extension of a generator-image map. Images live over
// `target` and must cover every generator appearing in e; each monomial is
// expanded as the ordered product of its factors, so Koszul signs come out of
// Element multiplication.
Element applyGeneratorMap(const AlgebraPtr& target,
                          const std::map<int, Element>& images,
                          const Element& e) {
  Element out = Element::zero(target);
  for (const auto& [m, c] : e.terms()) {
    Element acc = Element::unit(target, c);
    for (const auto& [id, exp] : m.factors())
      for (int k = 0; k < exp; ++k) acc = acc * images.at(id);
    out += acc;
  }
  return out;
}

int maxGeneratorDegree(const FreeGCA& alg) {
  int best = 0;
  for (const Generator& g : alg.generators()) best = std::max(best, g.degree);
  return best;
}

std::vector<bool> fiberMask(const KSExtension& ext) {
  std::vector<bool> mask(static_cast<size_t>(ext.total.algebra->size()), false);
  for (int id : ext.fiberOrder) mask[static_cast<size_t>(id)] = true;
  return mask;
}

}  // namespace

bool KSExtension::isFiberGen(int totalId) const {
  return std::find(fiberOrder.begin(), fiberOrder.end(), totalId) !=
         fiberOrder.end();
}

int KSExtension::ksPosition(int totalId) const {
  const auto it = std::find(fiberOrder.begin(), fiberOrder.end(), totalId);
  return it == fiberOrder.end()
             ? -1
             : static_cast<int>(it - fiberOrder.begin());
}

AlgebraPtr KSExtension::fiberAlgebra() const {
  std::vector<Generator> gens;
  for (int id : fiberOrder) {
    const Generator& g = total.algebra->gen(id);
    gens.push_back(Generator{g.name, g.degree});
  }
  return makeAlgebra(std::move(gens), GradingMode::PureSplit);
}

Cdga KSExtension::fiberModel() const {
  const AlgebraPtr fib = fiberAlgebra();
  std::map<int, Element> images;
  for (int id : fiberOrder) {
    Element img = projectToFiber(*this, total.differential.image(id));
    if (!img.isZero()) images.emplace(*fib->findGen(total.algebra->gen(id).name),
                                      remapByName(img, fib));
  }
  return Cdga::free(fib, Differential(fib, std::move(images)));
}

Element liftFiberElement(const KSExtension& ext, const Element& fiberElt) {
  return remapByName(fiberElt, ext.total.algebra);
}

Element liftBaseElement(const KSExtension& ext, const Element& baseElt) {
  return remapByName(baseElt, ext.total.algebra);
}

Element projectToFiber(const KSExtension& ext, const Element& totalElt) {
  const std::vector<bool> isFiber = fiberMask(ext);
  return totalElt.filtered([&](const Monomial& m) {
    for (const auto& [id, exp] : m.factors()) {
      (void)exp;
      if (!isFiber[static_cast<size_t>(id)]) return false;
    }
    return true;
  });
}

KSExtension makeKSExtension(
    const Cdga& base, std::vector<Generator> fiberGens,
    const std::function<std::map<std::string, Element>(const AlgebraPtr&)>&
        fiberImages,
    const std::vector<std::string>& ksOrder) {
  validateCdga(base);
  if (fiberGens.empty())
    throw PreconditionError("a KS-extension needs at least one fiber generator");

  std::set<std::string> fiberNames;
  std::vector<Generator> all;
  for (const Generator& g : base.algebra->generators())
    all.push_back(Generator{g.name, g.degree, 0});
  for (Generator& g : fiberGens) {
    if (!fiberNames.insert(g.name).second)
      throw PreconditionError("duplicate fiber generator name " + g.name);
    if (base.algebra->findGen(g.name))
      throw PreconditionError("fiber generator " + g.name +
                              " clashes with a base generator");
    g.lowerDegree = isOddDegree(g.degree) ? 1 : 0;
    all.push_back(g);
  }
  const AlgebraPtr totalAlg = makeAlgebra(std::move(all), GradingMode::LowerGraded);

  std::vector<int> baseIds;
  for (int id = 0; id < totalAlg->size(); ++id)
    if (!fiberNames.count(totalAlg->gen(id).name)) baseIds.push_back(id);

  // KS order: explicit name list, or (degree ascending, declaration order).
  std::vector<int> fiberOrder;
  if (!ksOrder.empty()) {
    if (ksOrder.size() != fiberNames.size())
      throw PreconditionError("the KS order must list every fiber generator exactly once");
    std::set<std::string> seen;
    for (const std::string& name : ksOrder) {
      if (!fiberNames.count(name) || !seen.insert(name).second)
        throw PreconditionError("the KS order entry " + name +
                                " is not a distinct fiber generator");
      fiberOrder.push_back(*totalAlg->findGen(name));
    }
  } else {
    std::stable_sort(fiberGens.begin(), fiberGens.end(),
                     [](const Generator& a, const Generator& b) {
                       return a.degree < b.degree;
                     });
    for (const Generator& g : fiberGens)
      fiberOrder.push_back(*totalAlg->findGen(g.name));
  }

  std::map<int, Element> images;
  for (const Generator& g : base.algebra->generators()) {
    const Element& img = base.differential.image(*base.algebra->findGen(g.name));
    if (!img.isZero())
      images.emplace(*totalAlg->findGen(g.name), remapByName(img, totalAlg));
  }
  for (auto& [name, img] : fiberImages(totalAlg)) {
    if (!fiberNames.count(name))
      throw PreconditionError("image given for " + name +
                              ", which is not a fiber generator");
    requireSameAlgebra(img.algebra(), totalAlg, "fiber image");
    if (!img.isZero()) images.emplace(*totalAlg->findGen(name), std::move(img));
  }

  std::vector<Element> relations;
  for (const Element& r : base.relations) relations.push_back(remapByName(r, totalAlg));

  Cdga total{totalAlg, std::move(relations),
             Differential(totalAlg, std::move(images))};
  return KSExtension{base, std::move(total), std::move(fiberOrder),
                     std::move(baseIds)};
}

ExtensionReport validate(const KSExtension& ext) {
  const AlgebraPtr& alg = ext.total.algebra;
  const Differential& D = ext.total.differential;

  // D restricted to the base is the base differential.
  for (const Generator& g : ext.base.algebra->generators()) {
    const int totalId = *alg->findGen(g.name);
    const Element lifted = liftBaseElement(
        ext, ext.base.differential.image(*ext.base.algebra->findGen(g.name)));
    if (!(D.image(totalId) == lifted))
      return {false, totalId,
              "D disagrees with the base differential on " + g.name};
  }
  // Total relations are the base relations.
  if (ext.total.relations.size() != ext.base.relations.size())
    return {false, -1, "total relations do not match the base relations"};
  for (size_t i = 0; i < ext.base.relations.size(); ++i)
    if (!(ext.total.relations[i] == liftBaseElement(ext, ext.base.relations[i])))
      return {false, -1, "total relations do not match the base relations"};

  // KS condition along the well-order.
  std::vector<bool> allowed(static_cast<size_t>(alg->size()), false);
  for (int id : ext.baseIds) allowed[static_cast<size_t>(id)] = true;
  for (int v : ext.fiberOrder) {
    for (const auto& [m, c] : D.image(v).terms()) {
      (void)c;
      for (const auto& [id, exp] : m.factors()) {
        (void)exp;
        if (!allowed[static_cast<size_t>(id)])
          return {false, v,
                  "D(" + alg->gen(v).name + ") uses " + alg->gen(id).name +
                      ", which is not below " + alg->gen(v).name +
                      " in the KS order"};
      }
    }
    allowed[static_cast<size_t>(v)] = true;
  }

  // D^2 = 0: symbolically on free totals, modulo the ideal on quotient bases.
  if (ext.total.hasRelations()) {
    try {
      const Window w(ext.total, maxGeneratorDegree(*alg) + 2);
      for (int id = 0; id < alg->size(); ++id) {
        const Element dd = applyDifferential(D, D.image(id));
        if (!w.normalForm(dd).isZero())
          return {false, id,
                  "D^2(" + alg->gen(id).name + ") = " + dd.str() +
                      " does not vanish modulo the base relations"};
      }
    } catch (const Error& err) {
      return {false, -1,
              std::string("the quotient structure is inconsistent: ") +
                  err.what()};
    }
  } else {
    const DSquaredReport d2 = checkDSquared(D, maxGeneratorDegree(*alg) + 2);
    if (!d2.ok)
      return {false, d2.generator,
              "D^2(" + alg->gen(d2.generator).name + ") = " +
                  d2.residual->str()};
  }
  return {};
}

bool checkPure(const KSExtension& ext) {
  const AlgebraPtr& alg = ext.total.algebra;
  if (!alg->lowerGraded())
    throw GradingError("purity needs the fiber parity split; the total algebra "
                       "carries no lower grading");
  const std::vector<bool> isFiber = fiberMask(ext);
  for (int v : ext.fiberOrder) {
    const Element& img = ext.total.differential.image(v);
    if (!isOddDegree(alg->gen(v).degree)) {
      if (!img.isZero()) return false;
      continue;
    }
    for (const auto& [m, c] : img.terms()) {
      (void)c;
      for (const auto& [id, exp] : m.factors()) {
        (void)exp;
        if (isFiber[static_cast<size_t>(id)] && isOddDegree(alg->gen(id).degree))
          return false;
      }
    }
  }
  return true;
}

TNCZReport checkTNCZ(const KSExtension& ext, std::optional<int> capOverride) {
  const Cdga fiber = ext.fiberModel();
  const FreeGCA& fibAlg = *fiber.algebra;

  int fd = 0;
  int maxFiberDeg = 0;
  for (const Generator& g : fibAlg.generators()) {
    fd += isOddDegree(g.degree) ? g.degree + 1 : -g.degree;
    maxFiberDeg = std::max(maxFiberDeg, g.degree);
  }
  const int cap = capOverride.value_or(std::max(fd, 0));
  if (cap < 0) throw PreconditionError("the TNCZ cap must be nonnegative");

  // The fiber window reaches one generator degree past the cap and must
  // vanish there; otherwise the degreewise check below cannot be conclusive.
  const Window fibWindow(fiber, cap + maxFiberDeg);
  for (int k = cap + 1; k <= cap + maxFiberDeg; ++k)
    if (fibWindow.betti(k) != 0)
      throw PreconditionError(
          "fiber cohomology does not vanish above the cap (degree " +
          std::to_string(k) + "); the fiber looks infinite-dimensional or the "
          "cap is too small");

  std::map<int, Element> qImages;
  for (int v : ext.fiberOrder)
    qImages.emplace(v, Element::fromGenerator(
                           fiber.algebra,
                           *fibAlg.findGen(ext.total.algebra->gen(v).name)));
  const DGMorphism q(ext.total, fiber, std::move(qImages));
  const ChainMapReport cm =
      checkChainMap(q, maxGeneratorDegree(*ext.total.algebra) + 1);
  if (!cm.ok)
    return {false, -1, std::nullopt,
            "the projection to the fiber is not a chain map; the extension "
            "does not satisfy the KS condition",
            cap};

  const Window totalWindow(ext.total, cap);
  for (int k = 0; k <= cap; ++k) {
    const int fib = fibWindow.betti(k);
    if (fib == 0) continue;
    const std::vector<Element> reps = totalWindow.classRepresentatives(k);
    RMat image(fib, static_cast<Eigen::Index>(reps.size()));
    for (size_t j = 0; j < reps.size(); ++j)
      image.col(static_cast<Eigen::Index>(j)) =
          fibWindow.classCoordinates(q.apply(reps[j]), k);
    const linalg::Echelon<Rational> ech = linalg::spanEchelon<Rational>(image);
    for (int i = 0; i < fib; ++i) {
      RVec unit = RVec::Constant(fib, Rational(0));
      unit(i) = Rational(1);
      if (!linalg::inSpan<Rational>(ech, unit)) {
        return {false, k, fibWindow.classRepresentatives(k)[static_cast<size_t>(i)],
                "a fiber class of degree " + std::to_string(k) +
                    " is not in the image of H(total) -> H(fiber)",
                cap};
      }
    }
  }
  return {true, -1, std::nullopt, "", cap};
}

void validateBasisChange(const KSExtension& ext, const BasisChange& bc) {
  const AlgebraPtr& alg = ext.total.algebra;
  const std::vector<bool> isFiber = fiberMask(ext);
  for (const auto& [v, eta] : bc.substitutions) {
    if (v < 0 || v >= alg->size() || !isFiber[static_cast<size_t>(v)])
      throw PreconditionError("basis changes may only substitute fiber generators");
    const std::string& name = alg->gen(v).name;
    requireSameAlgebra(eta.algebra(), alg, "basis change");
    if (eta.isZero()) continue;
    if (!eta.isHomogeneousOfDegree(alg->gen(v).degree))
      throw PreconditionError("substitution for " + name +
                              " is not homogeneous of degree " +
                              std::to_string(alg->gen(v).degree));
    const int pos = ext.ksPosition(v);
    for (const auto& [m, c] : eta.terms()) {
      (void)c;
      bool hasBase = false;
      for (const auto& [id, exp] : m.factors()) {
        (void)exp;
        if (!isFiber[static_cast<size_t>(id)])
          hasBase = true;
        else if (ext.ksPosition(id) >= pos)
          throw PreconditionError(
              "substitution for " + name + " uses " + alg->gen(id).name +
              ", which is not below " + name + " in the KS order");
      }
      if (!hasBase)
        throw PreconditionError("substitution for " + name +
                                " has a term without base factors; eta must "
                                "lie in B+ (x) Lambda(V_<)");
    }
  }
}

namespace {

// psi = phi^{-1} on generators, by back-substitution along the KS order:
// psi(v) = v - psi(eta_v) only ever needs psi on strictly earlier generators.
std::map<int, Element> inverseImages(const KSExtension& ext,
                                     const BasisChange& bc) {
  const AlgebraPtr& alg = ext.total.algebra;
  std::map<int, Element> psi;
  for (int id = 0; id < alg->size(); ++id)
    psi.emplace(id, Element::fromGenerator(alg, id));
  for (int v : ext.fiberOrder) {
    const auto it = bc.substitutions.find(v);
    if (it == bc.substitutions.end() || it->second.isZero()) continue;
    psi.at(v) = Element::fromGenerator(alg, v) -
                applyGeneratorMap(alg, psi, it->second);
  }
  return psi;
}

}  // namespace

KSExtension changeBasis(const KSExtension& ext, const BasisChange& bc) {
  validateBasisChange(ext, bc);
  const AlgebraPtr& alg = ext.total.algebra;

  std::map<int, Element> phi;
  for (int id = 0; id < alg->size(); ++id)
    phi.emplace(id, Element::fromGenerator(alg, id));
  for (const auto& [v, eta] : bc.substitutions) phi.at(v) += eta;
  const std::map<int, Element> psi = inverseImages(ext, bc);

  std::map<int, Element> images;
  for (int id = 0; id < alg->size(); ++id) {
    Element img = applyGeneratorMap(
        alg, psi, applyDifferential(ext.total.differential, phi.at(id)));
    if (!img.isZero()) images.emplace(id, std::move(img));
  }

  KSExtension out{ext.base,
                  Cdga{alg, ext.total.relations,
                       Differential(alg, std::move(images))},
                  ext.fiberOrder, ext.baseIds};

  const ExtensionReport report = validate(out);
  if (!report.ok)
    throw TheoryViolationError(
        "conjugating by a valid basis change must preserve validity, but: " +
        report.failure);
  for (int v : ext.fiberOrder)
    if (!(projectToFiber(out, out.total.differential.image(v)) ==
          projectToFiber(ext, ext.total.differential.image(v))))
      throw TheoryViolationError(
          "a basis change altered the fiber differential on " +
          alg->gen(v).name);
  return out;
}

BasisChange inverseBasisChange(const KSExtension& ext, const BasisChange& bc) {
  validateBasisChange(ext, bc);
  const std::map<int, Element> psi = inverseImages(ext, bc);
  BasisChange inv;
  for (const auto& [v, eta] : bc.substitutions) {
    if (eta.isZero()) continue;
    Element sub = psi.at(v) - Element::fromGenerator(ext.total.algebra, v);
    if (!sub.isZero()) inv.substitutions.emplace(v, std::move(sub));
  }
  return inv;
}

BasisChange composeBasisChanges(const KSExtension& ext, const BasisChange& first,
                                const BasisChange& second) {
  validateBasisChange(ext, first);
  validateBasisChange(ext, second);
  const AlgebraPtr& alg = ext.total.algebra;
  std::map<int, Element> phi1;
  for (int id = 0; id < alg->size(); ++id)
    phi1.emplace(id, Element::fromGenerator(alg, id));
  for (const auto& [v, eta] : first.substitutions) phi1.at(v) += eta;

  BasisChange out;
  std::set<int> keys;
  for (const auto& [v, eta] : first.substitutions) keys.insert(v);
  for (const auto& [v, eta] : second.substitutions) keys.insert(v);
  for (int v : keys) {
    Element phi2v = Element::fromGenerator(alg, v);
    const auto it = second.substitutions.find(v);
    if (it != second.substitutions.end()) phi2v += it->second;
    Element sub = applyGeneratorMap(alg, phi1, phi2v) -
                  Element::fromGenerator(alg, v);
    if (!sub.isZero()) out.substitutions.emplace(v, std::move(sub));
  }
  return out;
}

PushoutResult pushout(const KSExtension& ext, const DGMorphism& phi,
                      bool requireQuasiIso, std::optional<int> cap) {
  requireSameAlgebra(phi.source().algebra, ext.base.algebra, "pushout");
  const Cdga& newBase = phi.target();

  const ChainMapReport cm =
      checkChainMap(phi, maxGeneratorDegree(*ext.base.algebra) + 1);
  if (!cm.ok)
    throw PreconditionError(
        "pushout needs a chain map, but d phi != phi d on " +
        ext.base.algebra->gen(cm.generator).name);

  std::vector<Generator> fiberGens;
  for (int v : ext.fiberOrder) {
    const Generator& g = ext.total.algebra->gen(v);
    fiberGens.push_back(Generator{g.name, g.degree});
  }
  std::vector<std::string> order;
  for (const Generator& g : fiberGens) order.push_back(g.name);

  // Declaration order of fiberGens is the KS order here, but pass the names
  // explicitly so a custom order survives the pushout.
  const KSExtension pushed = makeKSExtension(
      newBase, fiberGens,
      [&](const AlgebraPtr& totalAlg) {
        // Base generators map through phi into the new base, fiber
        // generators to themselves; extend multiplicatively over D-images.
        std::map<int, Element> gamma;
        for (int id : ext.baseIds) {
          const int baseId =
              *ext.base.algebra->findGen(ext.total.algebra->gen(id).name);
          gamma.emplace(id, remapByName(phi.image(baseId), totalAlg));
        }
        for (int v : ext.fiberOrder)
          gamma.emplace(v, Element::fromGenerator(
                               totalAlg,
                               *totalAlg->findGen(ext.total.algebra->gen(v).name)));
        std::map<std::string, Element> images;
        for (int v : ext.fiberOrder)
          images.emplace(ext.total.algebra->gen(v).name,
                         applyGeneratorMap(totalAlg, gamma,
                                           ext.total.differential.image(v)));
        return images;
      },
      order);

  PushoutResult result{pushed, false, -1};
  if (requireQuasiIso) {
    const int qCap =
        cap.value_or(maxGeneratorDegree(*ext.total.algebra) + 1);
    const QuasiIsoReport qi = isQuasiIso(phi, qCap);
    if (!qi.ok)
      throw PreconditionError(
          "the base morphism was asserted to be a quasi-isomorphism, but: " +
          qi.reason);
    result.baseQuasiIso = true;
    result.verifiedCap = qCap;
  }
  return result;
}

}  // namespace rht
