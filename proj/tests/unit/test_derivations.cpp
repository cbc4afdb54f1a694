#include <doctest.h>

#include <vector>

#include "../support/oracles.hpp"
#include "rht/derivation.hpp"
#include "rht/errors.hpp"
#include "rht/presentation.hpp"

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

Presentation projectiveSpace(int n) {  // Q[x2]/(x^{n+1})
  auto alg = makeAlgebra({{"x2", 2}});
  return Presentation(alg, {pow(g(alg, "x2"), n + 1)});
}

Presentation flagStyle() {  // Q[a2,b2]/(a^2+ab+b^2, a^2 b + a b^2)
  auto alg = makeAlgebra({{"a2", 2}, {"b2", 2}});
  Element a = g(alg, "a2"), b = g(alg, "b2");
  return Presentation(alg, {a * a + a * b + b * b, a * a * b + a * b * b});
}

Presentation sphereProduct24() {  // Q[a2,b4]/(a^2, b^2)
  auto alg = makeAlgebra({{"a2", 2}, {"b4", 4}});
  return Presentation(alg, {pow(g(alg, "a2"), 2), pow(g(alg, "b4"), 2)});
}

// Trivial-products quotient of the wedge of a 2- and a 4-sphere: three
// relations on two generators, accepted only with the regularity waiver.
Presentation wedge24() {
  auto alg = makeAlgebra({{"x2", 2}, {"y4", 4}});
  Element x = g(alg, "x2"), y = g(alg, "y4");
  return Presentation(alg, {x * x, x * y, y * y});
}

// Independent Leibniz expansion: apply theta to a monomial by summing, over
// each factor occurrence, the product with that occurrence replaced by its
// image. Exercises a different code path than the chain-rule solver.
Element applyThetaIndependently(const std::map<int, Element>& images,
                                const Element& e) {
  const AlgebraPtr& alg = e.algebra();
  Element out = Element::zero(alg);
  for (const auto& [mon, coeff] : e.terms()) {
    std::vector<int> flat;
    for (const auto& [id, exp] : mon.factors())
      for (int i = 0; i < exp; ++i) flat.push_back(id);
    for (std::size_t pos = 0; pos < flat.size(); ++pos) {
      auto it = images.find(flat[pos]);
      if (it == images.end()) continue;
      Element term = Element::unit(alg, coeff);
      for (std::size_t i = 0; i < flat.size(); ++i)
        term = term * (i == pos ? it->second
                                : Element::fromGenerator(alg, flat[i]));
      out += term;
    }
  }
  return out;
}

// Independent ideal-membership test: rank comparison over the dense oracle.
bool inIdealSlice(const Presentation& p, const Element& e, int degree) {
  if (e.isZero()) return true;
  const auto slice = basisSlice(*p.algebra(), degree);
  std::map<Monomial, int> index;
  for (std::size_t i = 0; i < slice.size(); ++i)
    index.emplace(slice[i], static_cast<int>(i));
  testsupport::DenseMatrix rows;
  auto rowOf = [&](const Element& el) {
    std::vector<Rational> row(slice.size(), Rational(0));
    for (const auto& [mon, coeff] : el.terms()) row[index.at(mon)] = coeff;
    return row;
  };
  for (const Element& r : p.relations()) {
    const int k = degree - r.topDegree();
    if (k < 0) continue;
    for (const Monomial& m : basisSlice(*p.algebra(), k))
      rows.push_back(rowOf(Element::term(p.algebra(), m, Rational(1)) * r));
  }
  const int base = testsupport::denseRank(rows);
  rows.push_back(rowOf(e));
  return testsupport::denseRank(rows) == base;
}

}  // namespace

TEST_CASE("projective spaces admit no negative derivations") {
  for (int n : {2, 3}) {
    const DerivationSpace s = derivationSpace(projectiveSpace(n), -2);
    CHECK(s.empty());
  }
}

TEST_CASE("products of even spheres admit no negative derivations") {
  auto alg = makeAlgebra({{"a2", 2}, {"b2", 2}});
  Presentation p(alg, {pow(g(alg, "a2"), 2), pow(g(alg, "b2"), 2)});
  CHECK(derivationSpace(p, -2).empty());
}

TEST_CASE("verdict scans: shifts, evidence, and the skip note") {
  SUBCASE("CP^3 scans only one shift") {
    const HalperinVerdict v = meierVerdict(projectiveSpace(3));
    CHECK(v.holds);
    CHECK(v.scannedShifts == std::vector<int>{-2});
    CHECK(v.evidence.size() == 1);
    CHECK_FALSE(v.oddShiftNote.empty());
  }
  SUBCASE("mixed generator degrees extend the scan to constant images") {
    const HalperinVerdict v = meierVerdict(sphereProduct24());
    CHECK(v.holds);
    CHECK(v.scannedShifts == std::vector<int>{-2, -4});
    for (const auto& s : v.evidence) CHECK(s.empty());
  }
  SUBCASE("the symmetric-relation flag-style presentation holds") {
    CHECK(meierVerdict(flagStyle()).holds);
  }
}

TEST_CASE("trivial-products wedge quotient: the solver finds theta(y) = x") {
  const Presentation p = wedge24();
  SUBCASE("the production path rejects it") {
    CHECK_THROWS_AS(derivationSpace(p, -2), PreconditionError);
  }
  SUBCASE("with the regularity waiver the space is one-dimensional") {
    DerivationOptions waive;
    waive.waiveRegularity = true;
    const DerivationSpace s = derivationSpace(p, -2, waive);
    REQUIRE(s.dimension() == 1);
    const auto& theta = s.basis[0];
    const int y = *p.algebra()->findGen("y4");
    REQUIRE(theta.count(y) == 1);
    CHECK(theta.at(y) == g(p.algebra(), "x2"));
    CHECK(theta.count(*p.algebra()->findGen("x2")) == 0);

    SUBCASE("the certificate annihilates every relation, checked independently") {
      for (const Element& r : p.relations()) {
        const Element image = applyThetaIndependently(theta, r);
        if (image.isZero()) continue;
        CHECK(inIdealSlice(p, image, r.topDegree() - 2));
      }
    }
  }
}

TEST_CASE("shift validation") {
  CHECK_THROWS_AS(derivationSpace(projectiveSpace(2), 0), PreconditionError);
  CHECK_THROWS_AS(derivationSpace(projectiveSpace(2), 2), PreconditionError);
  // Odd shifts are legal queries; the space is empty because odd quotient
  // degrees vanish.
  CHECK(derivationSpace(projectiveSpace(2), -1).empty());
}

TEST_CASE("scaling any relation leaves the derivation space unchanged") {
  const Presentation p = wedge24();
  auto alg = p.algebra();
  std::vector<Element> scaled = p.relations();
  scaled[0] = scaled[0] * Rational(7, 3);
  scaled[2] = scaled[2] * Rational(-2);
  const Presentation q(alg, scaled);
  DerivationOptions waive;
  waive.waiveRegularity = true;
  const DerivationSpace a = derivationSpace(p, -2, waive);
  const DerivationSpace b = derivationSpace(q, -2, waive);
  REQUIRE(a.dimension() == b.dimension());
  const int y = *alg->findGen("y4");
  CHECK(a.basis[0].at(y) == b.basis[0].at(y));
}

TEST_CASE("renaming generators preserves every scanned dimension") {
  // flagStyle with swapped roles: z2 sorts after c2, reversing declaration
  // effects; the verdict data must be identical.
  auto alg = makeAlgebra({{"z2", 2}, {"c2", 2}});
  Element a = g(alg, "z2"), b = g(alg, "c2");
  Presentation renamed(alg, {a * a + a * b + b * b, a * a * b + a * b * b});
  const HalperinVerdict v1 = meierVerdict(flagStyle());
  const HalperinVerdict v2 = meierVerdict(renamed);
  CHECK(v1.holds == v2.holds);
  REQUIRE(v1.evidence.size() == v2.evidence.size());
  for (std::size_t i = 0; i < v1.evidence.size(); ++i)
    CHECK(v1.evidence[i].dimension() == v2.evidence[i].dimension());
}

TEST_CASE("derivation solutions annihilate relations under a second Leibniz oracle") {
  // Certified-regular fixtures have empty spaces; the meaningful check runs
  // on the waived wedge fixture across every shift the verdict would scan.
  const Presentation p = wedge24();
  DerivationOptions waive;
  waive.waiveRegularity = true;
  for (int k : {-2, -4}) {
    const DerivationSpace s = derivationSpace(p, k, waive);
    for (const auto& theta : s.basis) {
      for (const Element& r : p.relations()) {
        const Element image = applyThetaIndependently(theta, r);
        if (!image.isZero())
          CHECK(inIdealSlice(p, image, r.topDegree() + k));
      }
    }
  }
}
