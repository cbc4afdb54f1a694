#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "rht/cohomology.hpp"
#include "rht/errors.hpp"
#include "rht/invariants.hpp"
#include "rht/ks_extension.hpp"
#include "rht/normalization.hpp"
#include "rht/pure_model.hpp"

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

// The odd sphere S^n as its one-generator formal model.
Cdga oddSphere(int n) {
  auto alg = makeAlgebra({{"u" + std::to_string(n), n}});
  return Cdga::free(alg, Differential::zero(alg));
}

// The even sphere S^n as Lambda(x_n, y_{2n-1}), d(y) = x^2.
Cdga evenSphere(int n) {
  const std::string y = "y" + std::to_string(2 * n - 1);
  auto alg = makeAlgebra({{"x" + std::to_string(n), n}, {y, 2 * n - 1}});
  const std::string x = "x" + std::to_string(n);
  return Cdga::free(
      alg, Differential(alg, {{id(alg, y.c_str()), pow(g(alg, x.c_str()), 2)}}));
}

// CP^n as the minimal model Lambda(x2, y_{2n+1}), d(y) = x^{n+1}.
Cdga cpnModel(int n) {
  const std::string y = "y" + std::to_string(2 * n + 1);
  auto alg = makeAlgebra({{"x2", 2}, {y, 2 * n + 1}});
  return Cdga::free(
      alg, Differential(alg, {{id(alg, y.c_str()), pow(g(alg, "x2"), n + 1)}}));
}

PureModel cpnPure(int n) {
  const std::string y = "y" + std::to_string(2 * n + 1);
  auto alg = makeAlgebra({{"x2", 2}, {y, 2 * n + 1}}, GradingMode::PureSplit);
  return makePureModel(
      alg, Differential(alg, {{id(alg, y.c_str()), pow(g(alg, "x2"), n + 1)}}));
}

PureModel s2xs4Pure() {
  auto alg = makeAlgebra({{"a2", 2}, {"b4", 4}, {"p3", 3}, {"q7", 7}},
                         GradingMode::PureSplit);
  return makePureModel(alg, Differential(alg, {{id(alg, "p3"), pow(g(alg, "a2"), 2)},
                                               {id(alg, "q7"), pow(g(alg, "b4"), 2)}}));
}

// CP^2 x S^3 as the free model Lambda(x2, y5, u3), d(y5) = x2^3.
Cdga cp2xs3Model() {
  auto alg = makeAlgebra({{"x2", 2}, {"y5", 5}, {"u3", 3}});
  return Cdga::free(alg,
                    Differential(alg, {{id(alg, "y5"), pow(g(alg, "x2"), 3)}}));
}

// S^2 x S^6 as Lambda(a2, p3, x6, y11), d(p3) = a2^2, d(y11) = x6^2.
Cdga s2xs6Model() {
  auto alg = makeAlgebra({{"a2", 2}, {"p3", 3}, {"x6", 6}, {"y11", 11}});
  return Cdga::free(alg,
                    Differential(alg, {{id(alg, "p3"), pow(g(alg, "a2"), 2)},
                                       {id(alg, "y11"), pow(g(alg, "x6"), 2)}}));
}

// The twistor total space Lambda(w4, w7, v2, v3): d(w7) = w4^2,
// d(v3) = v2^2 - w4. Quasi-isomorphic to CP^3 but not minimal.
Cdga twistorTotalModel() {
  auto alg = makeAlgebra({{"w4", 4}, {"w7", 7}, {"v2", 2}, {"v3", 3}});
  return Cdga::free(
      alg, Differential(alg, {{id(alg, "w7"), pow(g(alg, "w4"), 2)},
                              {id(alg, "v3"), pow(g(alg, "v2"), 2) - g(alg, "w4")}}));
}

// The wedge S^3 v S^5 presented formally: Lambda(b3, c5) / (b3 c5).
Cdga wedge35() {
  auto balg = makeAlgebra({{"b3", 3}, {"c5", 5}});
  return Cdga::formal(balg, {g(balg, "b3") * g(balg, "c5")});
}

KSExtension productCP2OverS3() {
  auto balg = makeAlgebra({{"u3", 3}});
  const Cdga base = Cdga::free(balg, Differential::zero(balg));
  return makeKSExtension(base, {{"z2", 2}, {"w5", 5}},
                         [](const AlgebraPtr& T) {
                           return std::map<std::string, Element>{
                               {"w5", pow(g(T, "z2"), 3)}};
                         });
}

KSExtension s2OverWedge35() {
  return makeKSExtension(wedge35(), {{"a2", 2}, {"p3", 3}},
                         [](const AlgebraPtr& T) {
                           return std::map<std::string, Element>{
                               {"p3", pow(g(T, "a2"), 2)}};
                         });
}

// (S^2)^2 x S^6 over S^3 v S^5, as a product.
KSExtension twoSpheresS6OverWedge35() {
  return makeKSExtension(
      wedge35(),
      {{"a2", 2}, {"b2", 2}, {"p3", 3}, {"q3", 3}, {"x6", 6}, {"y11", 11}},
      [](const AlgebraPtr& T) {
        return std::map<std::string, Element>{{"p3", pow(g(T, "a2"), 2)},
                                              {"q3", pow(g(T, "b2"), 2)},
                                              {"y11", pow(g(T, "x6"), 2)}};
      });
}

const InequalityVerdict* byRule(const std::vector<InequalityVerdict>& verdicts,
                                const char* rule) {
  for (const auto& v : verdicts)
    if (v.rule == rule) return &v;
  return nullptr;
}

}  // namespace

TEST_CASE("cup length and the word filtration agree on spheres and projective spaces") {
  {
    const Cdga s3 = oddSphere(3);
    CHECK(cupLength(Window(s3, 5)) == 1);
    const ToomerReport t = toomer(s3, 5);
    CHECK(t.value == 1);
    CHECK(t.minimalModel);
  }
  {
    const Cdga s2 = evenSphere(2);
    CHECK(cupLength(Window(s2, 4)) == 1);
    const ToomerReport t = toomer(s2, 4);
    CHECK(t.value == 1);
    CHECK(t.minimalModel);
  }
  for (int n = 2; n <= 4; ++n) {
    const Cdga cp = cpnModel(n);
    const int cap = 2 * n + 2;
    CHECK(cupLength(Window(cp, cap)) == n);
    const ToomerReport t = toomer(cp, cap);
    CHECK(t.value == n);
    CHECK(t.minimalModel);
  }
}

TEST_CASE("the word filtration flags non-minimal models") {
  // The twistor total is quasi-isomorphic to CP^3; the filtration value is
  // the same on both models here, but only the minimal one certifies it.
  const ToomerReport twistor = toomer(twistorTotalModel(), 8);
  CHECK(twistor.value == 3);
  CHECK(!twistor.minimalModel);
  CHECK(cupLength(Window(twistorTotalModel(), 8)) == 3);

  const ToomerReport minimal = toomer(cpnPure(3).asCdga(), 8);
  CHECK(minimal.value == 3);
  CHECK(minimal.minimalModel);
}

TEST_CASE("cup length and the word filtration are additive on products") {
  CHECK(cupLength(Window(cp2xs3Model(), 9)) == 3);
  CHECK(toomer(cp2xs3Model(), 9).value == 3);
  CHECK(cupLength(Window(s2xs6Model(), 10)) == 2);
  CHECK(toomer(s2xs6Model(), 10).value == 2);
}

TEST_CASE("windows that have not stabilized are refused") {
  // At cap 9 the top class of CP^4 sits in the second-to-last window degree:
  // a naive scan would report 3 without noticing the missing top products.
  const Cdga cp4 = cpnModel(4);
  CHECK_THROWS_AS(cupLength(Window(cp4, 9)), PreconditionError);
  CHECK_THROWS_AS(toomer(cp4, 9), PreconditionError);
  CHECK(cupLength(Window(cp4, 10)) == 4);
  CHECK(toomer(cp4, 10).value == 4);

  // Word length is only defined on a free model.
  auto halg = makeAlgebra({{"x2", 2}});
  const Cdga quotient = Cdga::formal(halg, {pow(g(halg, "x2"), 3)});
  CHECK_THROWS_AS(toomer(quotient, 6), PreconditionError);
  CHECK(cupLength(Window(quotient, 6)) == 2);
}

TEST_CASE("pure-model formality certificates pin nil0") {
  {
    const FormalityCertificate cert = formalityCertificateOfPure(cpnPure(2));
    CHECK(cert.verifiedCap == 6);
    CHECK(nil0(cert) == 2);
    CHECK(nil0(cert, 2) == 2);
  }
  {
    const FormalityCertificate cert = formalityCertificateOfPure(s2xs4Pure());
    CHECK(cert.verifiedCap == 8);
    const int crossCheck = toomer(s2xs4Pure().asCdga(), 8).value;
    CHECK(crossCheck == 2);
    CHECK(nil0(cert, crossCheck) == 2);
    // A wrong cross-check value is a contradiction, not a result.
    CHECK_THROWS_AS(nil0(cert, 3), TheoryViolationError);
  }
  {
    // S^3 is elliptic but not positively so: chi = 0, cohomology in odd
    // degrees, and the even-generator projection would be empty.
    auto alg = makeAlgebra({{"u3", 3}}, GradingMode::PureSplit);
    const PureModel s3 = makePureModel(alg, Differential::zero(alg));
    CHECK_THROWS_AS(formalityCertificateOfPure(s3), PreconditionError);
  }
}

TEST_CASE("invariant reports assemble and cross-check") {
  {
    const FormalityCertificate cert = formalityCertificateOfPure(cpnPure(2));
    const InvariantReport r = invariantReport(cpnPure(2).asCdga(), 6, &cert);
    CHECK(r.cup0 == 2);
    CHECK(r.e0 == 2);
    REQUIRE(r.nil0.has_value());
    CHECK(*r.nil0 == 2);
    REQUIRE(r.cat0.has_value());
    CHECK(*r.cat0 == 2);
    CHECK(!r.cl0Upper.has_value());
    CHECK(r.provenance.size() == 4);
  }
  {
    const InvariantReport r = invariantReportOfFormal(wedge35(), 7);
    CHECK(r.cup0 == 1);
    CHECK(r.e0 == 1);
    CHECK(*r.nil0 == 1);
    CHECK(*r.cat0 == 1);
  }
  {
    // No certificate: nil0 and cat0 stay open, and the non-minimal model is
    // flagged as such in the provenance.
    const InvariantReport r = invariantReport(twistorTotalModel(), 8);
    CHECK(r.cup0 == 3);
    CHECK(r.e0 == 3);
    CHECK(!r.nil0.has_value());
    CHECK(!r.cat0.has_value());
    CHECK(std::any_of(r.provenance.begin(), r.provenance.end(),
                      [](const ProvenanceEntry& p) {
                        return p.invariant == "e0" &&
                               p.rule.find("model-dependent") != std::string::npos;
                      }));
  }
  CHECK_THROWS_AS(invariantReportOfFormal(cpnModel(2), 6), PreconditionError);
}

TEST_CASE("the acyclic quotient bounds cone length over odd-sphere bases") {
  const KSExtension ext = productCP2OverS3();
  const AcyclicIdealQuotient q = cl0UpperViaAcyclicQuotient(ext);
  CHECK(q.verifiedCap == 9);
  CHECK(q.nilpotencyLength == 3);
  CHECK(q.acyclicityCertificate.size() == 10);
  CHECK(q.acyclicityCertificate.front().idealDim == 0);
  // One nontrivial slice: the odd fiber generator itself sits in the kernel.
  REQUIRE(q.idealSlices.count(5) == 1);
  CHECK(q.idealSlices.at(5).size() == 1);

  // The collapse instance: the bound meets the word filtration exactly.
  const ToomerReport t = toomer(ext.total, 9);
  CHECK(t.value == 3);
  CHECK(t.value == q.nilpotencyLength);
}

TEST_CASE("the acyclic quotient handles a wedge base with relations") {
  const AcyclicIdealQuotient q = cl0UpperViaAcyclicQuotient(s2OverWedge35());
  CHECK(q.verifiedCap == 9);
  // Quotient Lambda(b3, c5, a2) / (b3 c5, a2^2): nilpotency 2 = 1 + nil0(S^2).
  CHECK(q.nilpotencyLength == 2);
}

TEST_CASE("the acyclic quotient digests a twisted bundle over a wedge") {
  const KSExtension P = twoSpheresS6OverWedge35();
  const AlgebraPtr& T = P.total.algebra;

  const AcyclicIdealQuotient qP = cl0UpperViaAcyclicQuotient(P);
  CHECK(qP.verifiedCap == 17);
  // 1 + nil0((S^2)^2 x S^6): one wedge class times a2 * b2 * x6.
  CHECK(qP.nilpotencyLength == 4);

  // Twist the top generator across the base: D(y11) picks up the term
  // c5 * (b2^2 p3 - a2^2 q3), so the base-direction derivation along c5 is
  // genuinely nonzero and the stability checks have something to verify.
  BasisChange twist;
  twist.substitutions.emplace(id(T, "y11"),
                              g(T, "c5") * (g(T, "p3") * g(T, "q3")));
  const KSExtension twisted = changeBasis(P, twist);
  const Element dy11 = twisted.total.differential.image(id(T, "y11"));
  const bool carriesBase =
      std::any_of(dy11.terms().begin(), dy11.terms().end(),
                  [&](const auto& term) {
                    return term.first.exponentOf(id(T, "c5")) == 1;
                  });
  REQUIRE(carriesBase);

  const AcyclicIdealQuotient qT = cl0UpperViaAcyclicQuotient(twisted);
  CHECK(qT.nilpotencyLength == qP.nilpotencyLength);
  CHECK(qT.verifiedCap == 17);
}

TEST_CASE("the acyclic quotient refuses out-of-class inputs") {
  {
    // An even generator left open by a twist must be closed first.
    const KSExtension P = twoSpheresS6OverWedge35();
    const AlgebraPtr& T = P.total.algebra;
    BasisChange twist;
    twist.substitutions.emplace(id(T, "x6"), g(T, "b3") * g(T, "p3"));
    const KSExtension twisted = changeBasis(P, twist);
    REQUIRE(!twisted.total.differential.image(id(T, "x6")).isZero());
    CHECK_THROWS_AS(cl0UpperViaAcyclicQuotient(twisted), PreconditionError);
  }
  {
    // An even base class breaks the wedge hypothesis.
    auto halg = makeAlgebra({{"w4", 4}});
    const Cdga h = Cdga::formal(halg, {pow(g(halg, "w4"), 2)});
    const KSExtension overEven = makeKSExtension(
        h, {{"a2", 2}, {"p3", 3}}, [](const AlgebraPtr& A) {
          return std::map<std::string, Element>{{"p3", pow(g(A, "a2"), 2)}};
        });
    CHECK_THROWS_AS(cl0UpperViaAcyclicQuotient(overEven), PreconditionError);
  }
  {
    // A free two-generator odd base is not a wedge: b3 * c3 survives.
    auto balg = makeAlgebra({{"b3", 3}, {"c3", 3}});
    const Cdga base = Cdga::free(balg, Differential::zero(balg));
    const KSExtension overTorus = makeKSExtension(
        base, {{"a2", 2}, {"p3", 3}}, [](const AlgebraPtr& A) {
          return std::map<std::string, Element>{{"p3", pow(g(A, "a2"), 2)}};
        });
    CHECK_THROWS_AS(cl0UpperViaAcyclicQuotient(overTorus), PreconditionError);
  }
  {
    // A fiber with vanishing Euler characteristic is refused.
    const KSExtension oddFiber = makeKSExtension(
        wedge35(), {{"u7", 7}}, [](const AlgebraPtr&) {
          return std::map<std::string, Element>{};
        });
    CHECK_THROWS_AS(cl0UpperViaAcyclicQuotient(oddFiber), PreconditionError);
  }
}

TEST_CASE("the inequality checker evaluates the applicable rules") {
  // E = CP^2 x S^3 over B = S^3 with fiber F = CP^2, the collapse instance.
  const KSExtension ext = productCP2OverS3();
  const NormalizedExtension fn = filteredNormalize(ext);
  const FormalityCertificate certE =
      formalityCertificateOfTotal(fn.extension, 9);
  InvariantReport total = invariantReport(fn.extension.total, 9, &certE);
  attachConeLengthBound(total, cl0UpperViaAcyclicQuotient(ext));
  REQUIRE(total.cl0Upper.has_value());
  CHECK(*total.cl0Upper == 3);

  const InvariantReport base = invariantReportOfFormal(ext.base, 5);
  const FormalityCertificate certF = formalityCertificateOfPure(cpnPure(2));
  const InvariantReport fiber = invariantReport(cpnPure(2).asCdga(), 6, &certF);

  FibrationContext ctx;
  ctx.tncz = true;
  ctx.baseFormal = true;
  ctx.baseOddWedge = true;
  ctx.fiberPositivelyElliptic = true;

  const auto verdicts = checkFibrationInequalities(total, base, fiber, ctx);
  REQUIRE(verdicts.size() == 6);
  for (const auto& v : verdicts) {
    CHECK(v.applicable);
    CHECK(v.holds);
  }

  // A corrupted report is caught by the rules that see the bad number.
  InvariantReport corrupted = total;
  corrupted.e0 = 1;
  const auto bad = checkFibrationInequalities(corrupted, base, fiber, ctx);
  const InequalityVerdict* toomerBound = byRule(bad, "odd-wedge Toomer bound");
  REQUIRE(toomerBound != nullptr);
  CHECK(toomerBound->applicable);
  CHECK(!toomerBound->holds);
  const InequalityVerdict* collapse =
      byRule(bad, "odd-wedge cone-length collapse");
  REQUIRE(collapse != nullptr);
  CHECK(!collapse->holds);

  // A rule whose hypotheses hold but whose inputs are missing is an error,
  // not a silent pass.
  InvariantReport gappy = fiber;
  gappy.nil0.reset();
  CHECK_THROWS_AS(checkFibrationInequalities(total, base, gappy, ctx),
                  PreconditionError);

  // With no established context nothing applies and nothing throws, even
  // with incomplete reports.
  const auto inert =
      checkFibrationInequalities(total, base, gappy, FibrationContext{});
  REQUIRE(inert.size() == 6);
  for (const auto& v : inert) {
    CHECK(!v.applicable);
    CHECK(!v.holds);
  }
}

TEST_CASE("certified reports cover quotient-carrying totals") {
  // S^2 over S^3 v S^5: the total keeps the base relation b3.c5 = 0, so the
  // word filtration is unavailable and the formality certificate pins e0.
  const NormalizedExtension fn = filteredNormalize(s2OverWedge35());
  const FormalityCertificate cert =
      formalityCertificateOfTotal(fn.extension, 11);
  const InvariantReport r =
      invariantReportOfCertified(fn.extension.total, 11, cert);
  CHECK(r.cup0 == 2);
  CHECK(r.e0 == 2);
  REQUIRE(r.nil0.has_value());
  CHECK(*r.nil0 == 2);
  REQUIRE(r.cat0.has_value());
  CHECK(*r.cat0 == 2);
  bool pinnedByCertificate = false;
  for (const ProvenanceEntry& entry : r.provenance)
    if (entry.invariant == "e0" &&
        entry.rule.find("formality certificate") != std::string::npos)
      pinnedByCertificate = true;
  CHECK(pinnedByCertificate);

  SUBCASE("relation-free models delegate to the word-filtration report") {
    const PureModel pure = cpnPure(2);
    const FormalityCertificate pureCert = formalityCertificateOfPure(pure);
    const InvariantReport direct =
        invariantReportOfCertified(pure.asCdga(), 6, pureCert);
    CHECK(direct.cup0 == 2);
    CHECK(direct.e0 == 2);
    REQUIRE(direct.nil0.has_value());
    CHECK(*direct.nil0 == 2);
  }
}

TEST_CASE("cup length never exceeds the word filtration across the shelf") {
  const std::vector<std::pair<Cdga, int>> shelf = {
      {oddSphere(3), 5},      {evenSphere(2), 4},  {cpnModel(2), 6},
      {cpnModel(3), 8},       {cpnModel(4), 10},   {cp2xs3Model(), 9},
      {s2xs6Model(), 10},     {twistorTotalModel(), 8}};
  for (const auto& [model, cap] : shelf) {
    const Window H(model, cap);
    CHECK(cupLength(H) <= toomer(H).value);
  }
}
