#include <doctest.h>

#include <map>
#include <vector>

#include "../support/oracles.hpp"
#include "rht/cdga.hpp"
#include "rht/cohomology.hpp"
#include "rht/errors.hpp"

using namespace rht;

namespace {

Cdga sphereTwoModel() {
  auto alg = makeAlgebra({{"v2", 2}, {"v3", 3}});
  const int v2 = *alg->findGen("v2"), v3 = *alg->findGen("v3");
  Element v2sq = Element::fromGenerator(alg, v2) * Element::fromGenerator(alg, v2);
  return Cdga::free(alg, Differential(alg, {{v3, v2sq}}));
}

// Total model of the CP^3 fibration over S^4: Lambda(w4, w7, v2, v3) with
// D(w7) = w4^2 and D(v3) = v2^2 - w4.
Cdga cp3OverS4Total() {
  auto alg = makeAlgebra({{"w4", 4}, {"w7", 7}, {"v2", 2}, {"v3", 3}});
  const int w4 = *alg->findGen("w4"), w7 = *alg->findGen("w7");
  const int v2 = *alg->findGen("v2"), v3 = *alg->findGen("v3");
  Element ew4 = Element::fromGenerator(alg, w4);
  Element ev2 = Element::fromGenerator(alg, v2);
  return Cdga::free(alg, Differential(alg, {{w7, ew4 * ew4}, {v3, ev2 * ev2 - ew4}}));
}

// Pure model of CP^2: Lambda(x2, y5), d(y5) = x2^3.
Cdga cp2Model() {
  auto alg = makeAlgebra({{"x2", 2}, {"y5", 5}});
  const int x2 = *alg->findGen("x2"), y5 = *alg->findGen("y5");
  Element ex = Element::fromGenerator(alg, x2);
  return Cdga::free(alg, Differential(alg, {{y5, ex * ex * ex}}));
}

// H(S^4) tensor Lambda(v2, v3) with the twisted differential D(v3) = v2^2 - w4:
// a quotient-algebra total, cohomology H(CP^3) again.
Cdga quotientTotal() {
  auto alg = makeAlgebra({{"w4", 4}, {"v2", 2}, {"v3", 3}});
  const int w4 = *alg->findGen("w4"), v2 = *alg->findGen("v2"), v3 = *alg->findGen("v3");
  Element ew4 = Element::fromGenerator(alg, w4);
  Element ev2 = Element::fromGenerator(alg, v2);
  return Cdga{alg, {ew4 * ew4}, Differential(alg, {{v3, ev2 * ev2 - ew4}})};
}

std::vector<int> bettiThrough(const Window& w, int cap) {
  std::vector<int> out;
  for (int k = 0; k <= cap; ++k) out.push_back(w.betti(k));
  return out;
}

}  // namespace

TEST_CASE("window of the S^2 model has the cohomology of the 2-sphere") {
  Window w(sphereTwoModel(), 6);
  CHECK(bettiThrough(w, 6) == std::vector<int>{1, 0, 1, 0, 0, 0, 0});
  CHECK(w.quotientDim(4) == 1);  // v2^2 survives as a slice element ...
  CHECK(w.betti(4) == 0);        // ... but is the coboundary of v3.
}

TEST_CASE("CP^3 fibration total model has the betti numbers of CP^3") {
  Cdga total = cp3OverS4Total();
  Window w(total, 8);
  CHECK(bettiThrough(w, 7) == std::vector<int>{1, 0, 1, 0, 1, 0, 1, 0});

  SUBCASE("degree-4 class representative reduces to the pulled-back volume form") {
    auto reps = w.classRepresentatives(4);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0].str() == "w4");
  }

  SUBCASE("v2^2 and w4 name the same degree-4 class") {
    const int v2 = *total.algebra->findGen("v2");
    const int w4 = *total.algebra->findGen("w4");
    Element ev2 = Element::fromGenerator(total.algebra, v2);
    Element ew4 = Element::fromGenerator(total.algebra, w4);
    CHECK(w.classCoordinates(ev2 * ev2, 4) == w.classCoordinates(ew4, 4));
  }

  SUBCASE("dense oracle agrees on every degree") {
    auto oracle = testsupport::denseBetti(total, 7);
    CHECK(bettiThrough(w, 7) == oracle);
  }
}

TEST_CASE("quotient coefficients: H(S^4) tensor Lambda(v2, v3), twisted") {
  Cdga total = quotientTotal();
  Window w(total, 8);

  SUBCASE("relation w4^2 truncates the slice bases") {
    auto basis8 = w.quotientBasis(8);
    REQUIRE(basis8.size() == 2);
    CHECK(toString(*total.algebra, basis8[0]) == "v2^2*w4");
    CHECK(toString(*total.algebra, basis8[1]) == "v2^4");
    CHECK(w.quotientDim(8) == 2);
  }

  SUBCASE("cohomology is H(CP^3): nothing above degree 6") {
    CHECK(bettiThrough(w, 8) == std::vector<int>{1, 0, 1, 0, 1, 0, 1, 0, 0});
  }

  SUBCASE("normal form kills the ideal and nothing else") {
    const int w4 = *total.algebra->findGen("w4");
    const int v2 = *total.algebra->findGen("v2");
    Element ew4 = Element::fromGenerator(total.algebra, w4);
    Element ev2 = Element::fromGenerator(total.algebra, v2);
    CHECK(w.normalForm(ew4 * ew4) == Element::zero(total.algebra));
    Element mixed = ew4 * ew4 + ev2 * ev2 * ev2 * ev2;
    Element nf = w.normalForm(mixed);
    CHECK(nf == ev2 * ev2 * ev2 * ev2);
    RVec coords = w.coordinates(nf, 8);
    REQUIRE(coords.size() == 2);
    CHECK(coords(0) == Rational(0));
    CHECK(coords(1) == Rational(1));
  }
}

TEST_CASE("pure CP^2 model: window, solveExact, and constraints") {
  Cdga m = cp2Model();
  Window w(m, 8);
  CHECK(bettiThrough(w, 7) == std::vector<int>{1, 0, 1, 0, 1, 0, 0, 0});

  const int x2 = *m.algebra->findGen("x2"), y5 = *m.algebra->findGen("y5");
  Element ex = Element::fromGenerator(m.algebra, x2);
  Element ey = Element::fromGenerator(m.algebra, y5);
  Element xcubed = ex * ex * ex;

  SUBCASE("d eta = x2^3 is solved by eta = y5") {
    auto eta = w.solveExact(xcubed);
    REQUIRE(eta.has_value());
    CHECK(*eta == ey);
  }

  SUBCASE("a word-length constraint can make the same problem unsolvable") {
    SliceConstraints c;
    c.minWordLength = 2;
    CHECK_FALSE(w.solveExact(xcubed, c).has_value());
  }

  SUBCASE("a cocycle that is not a coboundary yields no solution") {
    CHECK_FALSE(w.solveExact(ex * ex).has_value());
  }

  SUBCASE("a non-cocycle target is rejected up front") {
    CHECK_THROWS_AS(w.solveExact(ex * ey), PreconditionError);
  }

  SUBCASE("the zero target is solved by zero") {
    auto eta = w.solveExact(Element::zero(m.algebra));
    REQUIRE(eta.has_value());
    CHECK(eta->isZero());
  }

  SUBCASE("dense oracle agrees") {
    CHECK(bettiThrough(w, 7) == testsupport::denseBetti(m, 7));
  }
}

TEST_CASE("solveExact with a custom keep-predicate restricting the slice") {
  Cdga total = cp3OverS4Total();
  Window w(total, 8);
  const int v2 = *total.algebra->findGen("v2");
  const int v3 = *total.algebra->findGen("v3");
  const int w4 = *total.algebra->findGen("w4");
  Element ev2 = Element::fromGenerator(total.algebra, v2);
  Element ew4 = Element::fromGenerator(total.algebra, w4);
  Element target = ev2 * ev2 - ew4;

  auto eta = w.solveExact(target);
  REQUIRE(eta.has_value());
  CHECK(*eta == Element::fromGenerator(total.algebra, v3));

  // Restrict the ansatz to monomials that avoid the fiber generators: the
  // only degree-3 candidate v3 is excluded, so the problem becomes unsolvable.
  SliceConstraints baseOnly;
  baseOnly.keep = [v2, v3](const FreeGCA&, const Monomial& m) {
    for (const auto& [gen, exp] : m.factors()) {
      (void)exp;
      if (gen == v2 || gen == v3) return false;
    }
    return true;
  };
  CHECK_FALSE(w.solveExact(target, baseOnly).has_value());
}

TEST_CASE("morphisms: chain maps, quasi-isomorphisms, and their failure modes") {
  Cdga source = cp2Model();
  auto halg = makeAlgebra({{"x2", 2}});
  const int hx = *halg->findGen("x2");
  Element ehx = Element::fromGenerator(halg, hx);
  Cdga target = Cdga::formal(halg, {ehx * ehx * ehx});  // H(CP^2), zero differential

  const int sx = *source.algebra->findGen("x2");

  SUBCASE("the class projection of the CP^2 model is a quasi-isomorphism") {
    DGMorphism rho(source, target,
                   {{sx, ehx}});  // y5 omitted: maps to zero
    auto report = isQuasiIso(rho, 6);
    CHECK(report.ok);
    CHECK(report.chainMap);
    CHECK(report.verifiedCap == 6);
  }

  SUBCASE("a chain map with a betti mismatch fails at the first bad degree") {
    // Include the polynomial algebra on x2 into the CP^2 model: a chain map,
    // but upstairs x2^3 is exact while downstairs it persists forever.
    auto freeSource = Cdga::free(halg, Differential::zero(halg));
    Element ex = Element::fromGenerator(source.algebra, sx);
    DGMorphism iota(freeSource, source, {{hx, ex}});
    auto report = isQuasiIso(iota, 6);
    CHECK_FALSE(report.ok);
    CHECK(report.chainMap);
    CHECK(report.firstFailingDegree == 6);
  }

  SUBCASE("a degree-respecting map that is not a chain map is caught") {
    auto freeTarget = Cdga::free(halg, Differential::zero(halg));
    const int sy = *source.algebra->findGen("y5");
    DGMorphism phi(source, freeTarget, {{sx, ehx}});
    // phi(d y5) = x2^3 but d(phi y5) = 0.
    auto report = isQuasiIso(phi, 6);
    CHECK_FALSE(report.ok);
    CHECK_FALSE(report.chainMap);
    CHECK(report.chainMapGenerator == sy);
  }

  SUBCASE("equal betti numbers are not enough: the induced map must be injective") {
    auto aalg = makeAlgebra({{"a2", 2}});
    auto balg = makeAlgebra({{"b2", 2}});
    Cdga a = Cdga::free(aalg, Differential::zero(aalg));
    Cdga b = Cdga::free(balg, Differential::zero(balg));
    DGMorphism zero(a, b, {});  // a2 -> 0
    auto report = isQuasiIso(zero, 4);
    CHECK_FALSE(report.ok);
    CHECK(report.firstFailingDegree == 2);
  }
}

TEST_CASE("betti numbers are intrinsic: renaming and reordering change nothing") {
  Cdga total = cp3OverS4Total();
  Window w(total, 7);

  // Same model, generators declared in a different order and renamed; the
  // constructor's canonical ordering must make the two windows agree.
  auto alg = makeAlgebra({{"t3", 3}, {"s2", 2}, {"q7", 7}, {"p4", 4}});
  const int p4 = *alg->findGen("p4"), q7 = *alg->findGen("q7");
  const int s2 = *alg->findGen("s2"), t3 = *alg->findGen("t3");
  Element ep = Element::fromGenerator(alg, p4);
  Element es = Element::fromGenerator(alg, s2);
  Cdga renamed =
      Cdga::free(alg, Differential(alg, {{q7, ep * ep}, {t3, es * es - ep}}));
  Window w2(renamed, 7);
  CHECK(bettiThrough(w, 7) == bettiThrough(w2, 7));
}

TEST_CASE("two odd generators: oracle cross-check on an exterior algebra") {
  auto alg = makeAlgebra({{"u3", 3}, {"u5", 5}});
  Cdga m = Cdga::free(alg, Differential::zero(alg));
  Window w(m, 8);
  CHECK(bettiThrough(w, 8) == std::vector<int>{1, 0, 0, 1, 0, 1, 0, 0, 1});
  CHECK(bettiThrough(w, 8) == testsupport::denseBetti(m, 8));
  CHECK(testsupport::windowDimension(m, 8) <= 12);
}
