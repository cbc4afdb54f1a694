#include <doctest.h>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "rht/cohomology.hpp"
#include "rht/errors.hpp"
#include "rht/ks_extension.hpp"

using namespace rht;

namespace {

Element g(const AlgebraPtr& alg, const char* name) {
  return Element::fromGenerator(alg, *alg->findGen(name));
}

Element pow(Element e, int n) {
  Element acc = Element::unit(e.algebra());
  for (int i = 0; i < n; ++i) acc = acc * e;
  return acc;
}

int id(const AlgebraPtr& alg, const char* name) { return *alg->findGen(name); }

// The sphere bundle S^2 -> CP^3 -> S^4 (the twistor fibration of S^4):
// base Lambda(w4, w7) with d(w7) = w4^2, fiber generators v2, v3 with
// D(v3) = v2^2 - w4.
KSExtension twistorFibration(const std::vector<std::string>& order = {}) {
  auto balg = makeAlgebra({{"w4", 4}, {"w7", 7}});
  Cdga base = Cdga::free(
      balg, Differential(balg, {{id(balg, "w7"), pow(g(balg, "w4"), 2)}}));
  return makeKSExtension(
      base, {{"v2", 2}, {"v3", 3}},
      [](const AlgebraPtr& T) {
        return std::map<std::string, Element>{
            {"v3", pow(g(T, "v2"), 2) - g(T, "w4")}};
      },
      order);
}

// S^3 -> S^7 -> S^4: fiber Lambda(v3), D(v3) = w4. Valid, but the fiber
// class [v3] dies in the total space, so the bundle is not TNCZ.
KSExtension hopfQuotient() {
  auto balg = makeAlgebra({{"w4", 4}, {"w7", 7}});
  Cdga base = Cdga::free(
      balg, Differential(balg, {{id(balg, "w7"), pow(g(balg, "w4"), 2)}}));
  return makeKSExtension(base, {{"v3", 3}}, [](const AlgebraPtr& T) {
    return std::map<std::string, Element>{{"v3", g(T, "w4")}};
  });
}

Cdga sphereThreeBase() {
  auto balg = makeAlgebra({{"u3", 3}});
  return Cdga::free(balg, Differential::zero(balg));
}

// CP^2 x S^3 as a product extension over Lambda(u3).
KSExtension productOverS3() {
  return makeKSExtension(sphereThreeBase(), {{"x2", 2}, {"y5", 5}},
                         [](const AlgebraPtr& T) {
                           return std::map<std::string, Element>{
                               {"y5", pow(g(T, "x2"), 3)}};
                         });
}

// Fiber Lambda(x2, z4, e7) with D(e7) = x2^4 + z4^2, over the S^4 model.
// Degree-4 and degree-7 base elements exist, so this extension admits
// substantive basis changes.
KSExtension twistableExtension() {
  auto balg = makeAlgebra({{"w4", 4}, {"w7", 7}});
  Cdga base = Cdga::free(
      balg, Differential(balg, {{id(balg, "w7"), pow(g(balg, "w4"), 2)}}));
  return makeKSExtension(base, {{"x2", 2}, {"z4", 4}, {"e7", 7}},
                         [](const AlgebraPtr& T) {
                           return std::map<std::string, Element>{
                               {"e7", pow(g(T, "x2"), 4) + pow(g(T, "z4"), 2)}};
                         });
}

bool sameTotalDifferential(const KSExtension& a, const KSExtension& b) {
  if (!a.total.algebra->sameAs(*b.total.algebra)) return false;
  for (int i = 0; i < a.total.algebra->size(); ++i)
    if (!(a.total.differential.image(i) == b.total.differential.image(i)))
      return false;
  return true;
}

}  // namespace

TEST_CASE("the twistor fibration is a valid KS-extension") {
  const KSExtension ext = twistorFibration();
  const ExtensionReport report = validate(ext);
  CHECK(report.ok);
  CHECK(report.generator == -1);

  CHECK(ext.fiberOrder.size() == 2);
  CHECK(ext.total.algebra->gen(ext.fiberOrder[0]).name == "v2");
  CHECK(ext.total.algebra->gen(ext.fiberOrder[1]).name == "v3");
  CHECK(ext.baseIds.size() == 2);
  CHECK(ext.isFiberGen(id(ext.total.algebra, "v2")));
  CHECK(!ext.isFiberGen(id(ext.total.algebra, "w4")));
}

TEST_CASE("the derived fiber model forgets the base part of D") {
  const KSExtension ext = twistorFibration();
  const Cdga fiber = ext.fiberModel();
  CHECK(fiber.algebra->size() == 2);
  // d(v3) = v2^2: the w4 term is projected away, leaving the S^2 model.
  CHECK(fiber.differential.image(id(fiber.algebra, "v3")) ==
        pow(g(fiber.algebra, "v2"), 2));
  const Window w(fiber, 4);
  CHECK(w.betti(0) == 1);
  CHECK(w.betti(2) == 1);
  CHECK(w.betti(3) == 0);
  CHECK(w.betti(4) == 0);
}

TEST_CASE("reversing the KS order invalidates the twistor extension at v3") {
  const KSExtension ext = twistorFibration({"v3", "v2"});
  const ExtensionReport report = validate(ext);
  CHECK(!report.ok);
  CHECK(report.generator == id(ext.total.algebra, "v3"));
  CHECK(report.failure.find("v2") != std::string::npos);
}

TEST_CASE("zero-differential fibers tolerate any KS order") {
  Cdga base = sphereThreeBase();
  for (const auto& order :
       std::vector<std::vector<std::string>>{{"a3", "b5"}, {"b5", "a3"}}) {
    const KSExtension ext = makeKSExtension(
        base, {{"a3", 3}, {"b5", 5}},
        [](const AlgebraPtr&) { return std::map<std::string, Element>{}; },
        order);
    CHECK(validate(ext).ok);
  }
}

TEST_CASE("an even-generator twist that breaks D^2 = 0 is caught") {
  // Fiber (z2, x4, y5, y7) with d(y7) = x4^2, d(y5) = z2^3, twisted by
  // D(x4) = u3 z2. Then D^2(y7) = 2 u3 z2 x4 != 0.
  const KSExtension ext = makeKSExtension(
      sphereThreeBase(), {{"z2", 2}, {"x4", 4}, {"y5", 5}, {"y7", 7}},
      [](const AlgebraPtr& T) {
        return std::map<std::string, Element>{
            {"x4", g(T, "u3") * g(T, "z2")},
            {"y5", pow(g(T, "z2"), 3)},
            {"y7", pow(g(T, "x4"), 2)}};
      });
  const ExtensionReport report = validate(ext);
  CHECK(!report.ok);
  CHECK(report.generator == id(ext.total.algebra, "y7"));
  CHECK(report.failure.find("D^2") != std::string::npos);
}

TEST_CASE("degree-skewed fiber images are rejected at construction") {
  CHECK_THROWS_AS(
      makeKSExtension(sphereThreeBase(), {{"v3", 3}},
                      [](const AlgebraPtr& T) {
                        return std::map<std::string, Element>{
                            {"v3", g(T, "u3") * g(T, "v3")}};  // degree 6 != 4
                      }),
      GradingError);
}

TEST_CASE("fiber generator names must not clash with the base") {
  CHECK_THROWS_AS(makeKSExtension(
                      sphereThreeBase(), {{"u3", 3}},
                      [](const AlgebraPtr&) {
                        return std::map<std::string, Element>{};
                      }),
                  PreconditionError);
}

TEST_CASE("a KS order must enumerate the fiber generators exactly") {
  CHECK_THROWS_AS(twistorFibration({"v2"}), PreconditionError);
  CHECK_THROWS_AS(twistorFibration({"v2", "v2"}), PreconditionError);
  CHECK_THROWS_AS(twistorFibration({"v2", "w4"}), PreconditionError);
}

TEST_CASE("purity is a syntactic check on fiber images") {
  CHECK(checkPure(twistorFibration()));
  CHECK(checkPure(productOverS3()));
  // D(v3) = w4 lies in the base: still pure.
  CHECK(checkPure(hopfQuotient()));

  // An even fiber generator with D(v2) = u3 is not pure.
  const KSExtension evenTwist = makeKSExtension(
      sphereThreeBase(), {{"v2", 2}}, [](const AlgebraPtr& T) {
        return std::map<std::string, Element>{{"v2", g(T, "u3")}};
      });
  CHECK(validate(evenTwist).ok);
  CHECK(!checkPure(evenTwist));

  // An odd image with odd fiber factors is not pure either.
  const KSExtension oddFactors = makeKSExtension(
      sphereThreeBase(), {{"y3a", 3}, {"y3b", 3}, {"y5", 5}},
      [](const AlgebraPtr& T) {
        return std::map<std::string, Element>{
            {"y5", g(T, "y3a") * g(T, "y3b")}};
      });
  CHECK(validate(oddFactors).ok);
  CHECK(!checkPure(oddFactors));
}

TEST_CASE("the twistor fibration is TNCZ") {
  const TNCZReport report = checkTNCZ(twistorFibration());
  CHECK(report.tncz);
  CHECK(report.verifiedCap == 2);  // fiber S^2 has formal dimension 2
  CHECK(!report.missingFiberClass.has_value());

  // A larger cap reaches the same verdict.
  const TNCZReport wide = checkTNCZ(twistorFibration(), 6);
  CHECK(wide.tncz);
  CHECK(wide.verifiedCap == 6);
}

TEST_CASE("the product extension is TNCZ") {
  const TNCZReport report = checkTNCZ(productOverS3());
  CHECK(report.tncz);
  CHECK(report.verifiedCap == 4);  // fiber CP^2
}

TEST_CASE("S^3 -> S^7 -> S^4 is not TNCZ and the lost class is named") {
  const TNCZReport report = checkTNCZ(hopfQuotient());
  CHECK(!report.tncz);
  CHECK(report.failingDegree == 3);
  REQUIRE(report.missingFiberClass.has_value());
  const AlgebraPtr fib = report.missingFiberClass->algebra();
  CHECK(*report.missingFiberClass == g(fib, "v3"));
}

TEST_CASE("polynomial fibers are refused by the TNCZ cap guard") {
  const KSExtension evenTwist = makeKSExtension(
      sphereThreeBase(), {{"v2", 2}}, [](const AlgebraPtr& T) {
        return std::map<std::string, Element>{{"v2", g(T, "u3")}};
      });
  CHECK_THROWS_AS(checkTNCZ(evenTwist), PreconditionError);
}

TEST_CASE("changeBasis conjugates the differential exactly") {
  const KSExtension ext = twistableExtension();
  const AlgebraPtr& T = ext.total.algebra;

  BasisChange bc;
  bc.substitutions.emplace(id(T, "z4"), Rational(3) * g(T, "w4"));
  bc.substitutions.emplace(id(T, "e7"), g(T, "w7"));

  const KSExtension turned = changeBasis(ext, bc);
  CHECK(validate(turned).ok);

  // psi(z4) = z4 - 3 w4, psi(e7) = e7 - w7, so
  // D'(e7) = psi(x2^4 + z4^2 + w4^2)
  //        = x2^4 + z4^2 - 6 z4 w4 + 10 w4^2.
  const Element expected = pow(g(T, "x2"), 4) + pow(g(T, "z4"), 2) -
                           Rational(6) * (g(T, "z4") * g(T, "w4")) +
                           Rational(10) * pow(g(T, "w4"), 2);
  CHECK(turned.total.differential.image(id(T, "e7")) == expected);
  CHECK(turned.total.differential.image(id(T, "z4")).isZero());
  // The base part of D is untouched.
  CHECK(turned.total.differential.image(id(T, "w7")) == pow(g(T, "w4"), 2));
}

TEST_CASE("a basis change round-trips through its inverse") {
  const KSExtension ext = twistableExtension();
  const AlgebraPtr& T = ext.total.algebra;

  BasisChange bc;
  bc.substitutions.emplace(id(T, "z4"), Rational(3) * g(T, "w4"));
  bc.substitutions.emplace(id(T, "e7"), g(T, "w7"));

  const KSExtension turned = changeBasis(ext, bc);
  const BasisChange inv = inverseBasisChange(ext, bc);
  CHECK(sameTotalDifferential(changeBasis(turned, inv), ext));

  // The composite of a change and its inverse is the identity change.
  CHECK(composeBasisChanges(ext, bc, inv).empty());
}

TEST_CASE("composing basis changes matches applying them in sequence") {
  const KSExtension ext = twistableExtension();
  const AlgebraPtr& T = ext.total.algebra;

  BasisChange first, second;
  first.substitutions.emplace(id(T, "e7"), g(T, "w7"));
  first.substitutions.emplace(id(T, "z4"), Rational(2) * g(T, "w4"));
  second.substitutions.emplace(id(T, "e7"),
                               Rational(-1, 2) * g(T, "w7"));

  const KSExtension sequential = changeBasis(changeBasis(ext, first), second);
  const KSExtension composed =
      changeBasis(ext, composeBasisChanges(ext, first, second));
  CHECK(sameTotalDifferential(sequential, composed));
}

TEST_CASE("random twists round-trip across twenty seeds") {
  const KSExtension ext = twistableExtension();
  const AlgebraPtr& T = ext.total.algebra;
  std::mt19937_64 rng(0x5eed2026u);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);

  for (int trial = 0; trial < 20; ++trial) {
    auto coeff = [&]() {
      int n = num(rng);
      if (n == 0) n = 1;
      return Rational(n, den(rng));
    };
    BasisChange bc;
    bc.substitutions.emplace(id(T, "z4"), coeff() * g(T, "w4"));
    bc.substitutions.emplace(id(T, "e7"), coeff() * g(T, "w7"));
    const KSExtension turned = changeBasis(ext, bc);
    CHECK(validate(turned).ok);
    CHECK(sameTotalDifferential(
        changeBasis(turned, inverseBasisChange(ext, bc)), ext));
  }
}

TEST_CASE("malformed substitutions are rejected before any mutation") {
  const KSExtension ext = twistorFibration();
  const AlgebraPtr& T = ext.total.algebra;

  BasisChange wrongDegree;
  wrongDegree.substitutions.emplace(id(T, "v3"), g(T, "w4"));
  CHECK_THROWS_AS(changeBasis(ext, wrongDegree), PreconditionError);

  BasisChange noBaseFactor;
  noBaseFactor.substitutions.emplace(id(T, "v3"), g(T, "v3"));
  CHECK_THROWS_AS(changeBasis(ext, noBaseFactor), PreconditionError);

  BasisChange baseGenerator;
  baseGenerator.substitutions.emplace(id(T, "w4"), pow(g(T, "v2"), 2));
  CHECK_THROWS_AS(changeBasis(ext, baseGenerator), PreconditionError);
}

TEST_CASE("substitutions may not reach forward in the KS order") {
  // Under the custom order (e7, x2, e5) the substitution for e7 may not use
  // x2, even though the degrees would allow it.
  const KSExtension ext = makeKSExtension(
      sphereThreeBase(), {{"x2", 2}, {"e5", 5}, {"e7", 7}},
      [](const AlgebraPtr&) { return std::map<std::string, Element>{}; },
      {"e7", "x2", "e5"});
  const AlgebraPtr& T = ext.total.algebra;
  BasisChange forward;
  forward.substitutions.emplace(id(T, "e7"),
                                g(T, "u3") * pow(g(T, "x2"), 2));
  CHECK_THROWS_AS(validateBasisChange(ext, forward), PreconditionError);

  // The same element is a legal substitution for e7 under the default order.
  const KSExtension def = makeKSExtension(
      sphereThreeBase(), {{"x2", 2}, {"e5", 5}, {"e7", 7}},
      [](const AlgebraPtr&) { return std::map<std::string, Element>{}; });
  BasisChange fine;
  fine.substitutions.emplace(id(def.total.algebra, "e7"),
                             g(def.total.algebra, "u3") *
                                 pow(g(def.total.algebra, "x2"), 2));
  validateBasisChange(def, fine);  // must not throw
}

TEST_CASE("pushout along the identity reproduces the extension") {
  const KSExtension ext = twistorFibration();
  std::map<int, Element> images;
  for (int i = 0; i < ext.base.algebra->size(); ++i)
    images.emplace(i, Element::fromGenerator(ext.base.algebra, i));
  const DGMorphism identity(ext.base, ext.base, std::move(images));
  const PushoutResult result = pushout(ext, identity, true, 8);
  CHECK(result.baseQuasiIso);
  CHECK(result.verifiedCap == 8);
  CHECK(sameTotalDifferential(result.extension, ext));
}

TEST_CASE("pushout along the formality map of the S^4 base") {
  const KSExtension ext = twistorFibration();

  auto halg = makeAlgebra({{"w4", 4}});
  Cdga h = Cdga::formal(halg, {pow(g(halg, "w4"), 2)});
  const DGMorphism rho(ext.base, h,
                       {{id(ext.base.algebra, "w4"), g(halg, "w4")}});

  const PushoutResult result = pushout(ext, rho, true, 8);
  CHECK(result.baseQuasiIso);
  const KSExtension& pushed = result.extension;
  CHECK(validate(pushed).ok);

  // D'(v3) = v2^2 - [w4] over the quotient base.
  const AlgebraPtr& T = pushed.total.algebra;
  CHECK(pushed.total.relations.size() == 1);
  CHECK(pushed.total.differential.image(id(T, "v3")) ==
        pow(g(T, "v2"), 2) - g(T, "w4"));

  // The total cohomology is still H(CP^3): quasi-iso pushouts preserve it.
  const Window w(pushed.total, 7);
  const std::vector<int> expected{1, 0, 1, 0, 1, 0, 1, 0};
  for (int k = 0; k <= 7; ++k) CHECK(w.betti(k) == expected[static_cast<size_t>(k)]);
  CHECK(checkTNCZ(pushed).tncz);
}

TEST_CASE("pushout along the augmentation recovers the fiber") {
  const KSExtension ext = productOverS3();
  Cdga rationals = Cdga::formal(makeAlgebra({}), {});
  const DGMorphism aug(ext.base, rationals, {});
  const PushoutResult result = pushout(ext, aug);
  CHECK(!result.baseQuasiIso);

  const KSExtension& fiberOnly = result.extension;
  CHECK(fiberOnly.baseIds.empty());
  CHECK(validate(fiberOnly).ok);
  const AlgebraPtr& T = fiberOnly.total.algebra;
  CHECK(T->size() == 2);
  CHECK(fiberOnly.total.differential.image(id(T, "y5")) ==
        pow(g(T, "x2"), 3));

  const Window w(fiberOnly.total, 6);
  const std::vector<int> cp2{1, 0, 1, 0, 1, 0, 0};
  for (int k = 0; k <= 6; ++k) CHECK(w.betti(k) == cp2[static_cast<size_t>(k)]);
}

TEST_CASE("pushouts compose") {
  const KSExtension ext = twistorFibration();

  auto halg = makeAlgebra({{"w4", 4}});
  Cdga h = Cdga::formal(halg, {pow(g(halg, "w4"), 2)});
  const DGMorphism rho(ext.base, h,
                       {{id(ext.base.algebra, "w4"), g(halg, "w4")}});

  Cdga rationals = Cdga::formal(makeAlgebra({}), {});
  const KSExtension mid = pushout(ext, rho).extension;
  const DGMorphism augH(mid.base, rationals, {});
  const DGMorphism augAll(ext.base, rationals, {});

  const KSExtension twoStep = pushout(mid, augH).extension;
  const KSExtension oneStep = pushout(ext, augAll).extension;
  CHECK(sameTotalDifferential(twoStep, oneStep));
}

TEST_CASE("pushout refuses maps that are not chain maps") {
  const KSExtension ext = twistorFibration();
  // w7 -> 0 into the free polynomial algebra on w4 is not a chain map:
  // phi(d w7) = w4^2 has no preimage relation to cancel it.
  auto palg = makeAlgebra({{"w4", 4}});
  Cdga p = Cdga::free(palg, Differential::zero(palg));
  const DGMorphism notChain(ext.base, p,
                            {{id(ext.base.algebra, "w4"), g(palg, "w4")}});
  CHECK_THROWS_AS(pushout(ext, notChain), PreconditionError);
}

TEST_CASE("pushout refuses false quasi-iso certificates") {
  const KSExtension ext = productOverS3();
  Cdga rationals = Cdga::formal(makeAlgebra({}), {});
  const DGMorphism aug(ext.base, rationals, {});
  CHECK_THROWS_AS(pushout(ext, aug, true), PreconditionError);
}
