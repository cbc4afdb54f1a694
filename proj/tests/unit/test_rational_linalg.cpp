#include <doctest.h>

#include "rht/linalg.hpp"
#include "rht/rational.hpp"

using rht::Rational;
namespace la = rht::linalg;
using Mat = la::Mat<Rational>;
using Vec = la::Vec<Rational>;

TEST_CASE("rational arithmetic is exact and canonical") {
  Rational a(1, 3), b(1, 6);
  CHECK((a + b).str() == "1/2");
  CHECK((a * b).str() == "1/18");
  CHECK((a - a).isZero());
  CHECK((Rational(2, 4)).str() == "1/2");
  CHECK((Rational(-2, -4)).str() == "1/2");
  CHECK((Rational(2, -4)).str() == "-1/2");
  CHECK(Rational(7).str() == "7");
  CHECK((a / b).str() == "2");
  CHECK_THROWS_AS(a / Rational(0), rht::GradingError);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-5) < Rational(0));
}

TEST_CASE("rational string parsing is strict") {
  CHECK(Rational::fromString("3/4") == Rational(3, 4));
  CHECK(Rational::fromString("-3/4") == Rational(-3, 4));
  CHECK(Rational::fromString("12") == Rational(12));
  CHECK(Rational::fromString("0") == Rational(0));
  CHECK_THROWS_AS(Rational::fromString("2/4"), rht::ParseError);
  CHECK_THROWS_AS(Rational::fromString("3/1"), rht::ParseError);
  CHECK_THROWS_AS(Rational::fromString("1/0"), rht::ParseError);
  CHECK_THROWS_AS(Rational::fromString("1/-2"), rht::ParseError);
  CHECK_THROWS_AS(Rational::fromString("007"), rht::ParseError);
  CHECK_THROWS_AS(Rational::fromString(" 1"), rht::ParseError);
  CHECK_THROWS_AS(Rational::fromString("1.5"), rht::ParseError);
  CHECK_THROWS_AS(Rational::fromString(""), rht::ParseError);
  CHECK_THROWS_AS(Rational::fromString("-"), rht::ParseError);
  CHECK_THROWS_AS(Rational::fromString("1/"), rht::ParseError);
  // Round trip: str() output always parses back to the same value.
  for (long n = -6; n <= 6; ++n)
    for (long d = 1; d <= 5; ++d) {
      Rational r(n, d);
      CHECK(Rational::fromString(r.str()) == r);
    }
}

namespace {

Mat fromInts(std::initializer_list<std::initializer_list<int>> rows) {
  const auto nr = static_cast<Eigen::Index>(rows.size());
  const auto nc = static_cast<Eigen::Index>(rows.begin()->size());
  Mat m(nr, nc);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (int v : row) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("row reduction pivots in canonical order") {
  Mat a = fromInts({{0, 2, 4}, {1, 1, 1}, {1, 3, 5}});
  auto e = la::rowReduce<Rational>(a);
  REQUIRE(e.pivots.size() == 2);
  CHECK(e.pivots[0] == 0);
  CHECK(e.pivots[1] == 1);
  CHECK(e.rows(0, 0) == Rational(1));
  CHECK(e.rows(0, 1) == Rational(0));
  CHECK(e.rows(0, 2) == Rational(-1));
  CHECK(e.rows(1, 1) == Rational(1));
  CHECK(e.rows(1, 2) == Rational(2));
  CHECK(la::rank<Rational>(a) == 2);
}

TEST_CASE("kernel basis uses the free-variable convention") {
  Mat a = fromInts({{1, 2, 3}, {2, 4, 6}});
  Mat k = la::kernelBasis<Rational>(a);
  REQUIRE(k.cols() == 2);
  // Free columns are 1 and 2; each basis vector has a single 1 there.
  CHECK(k(1, 0) == Rational(1));
  CHECK(k(2, 0) == Rational(0));
  CHECK(k(0, 0) == Rational(-2));
  CHECK(k(2, 1) == Rational(1));
  CHECK(k(0, 1) == Rational(-3));
  // They really are kernel vectors.
  for (int j = 0; j < 2; ++j) {
    Vec v = a * k.col(j);
    for (Eigen::Index i = 0; i < v.rows(); ++i) CHECK(v(i).isZero());
  }
}

TEST_CASE("solve returns the first solution with free variables zero") {
  Mat a = fromInts({{1, 1, 0}, {0, 0, 1}});
  Vec b(2);
  b << Rational(3), Rational(5);
  auto x = la::solve<Rational>(a, b);
  REQUIRE(x.has_value());
  CHECK((*x)(0) == Rational(3));
  CHECK((*x)(1) == Rational(0));  // free variable pinned to zero
  CHECK((*x)(2) == Rational(5));

  Mat bad = fromInts({{1, 1}, {1, 1}});
  Vec c(2);
  c << Rational(0), Rational(1);
  CHECK_FALSE(la::solve<Rational>(bad, c).has_value());
}

TEST_CASE("span membership and quotient representatives") {
  Mat sub = fromInts({{1, 0}, {0, 1}, {0, 0}});  // span of e1, e2
  auto ech = la::spanEchelon<Rational>(sub);
  Vec v(3);
  v << Rational(2), Rational(-7), Rational(0);
  CHECK(la::inSpan<Rational>(ech, v));
  v(2) = Rational(1);
  CHECK_FALSE(la::inSpan<Rational>(ech, v));

  // Quotient of span{e1,e2,e3} by span{e1}: representatives reduce to e2, e3.
  Mat space = fromInts({{1, 1, 1}, {0, 1, 1}, {0, 0, 1}});
  Mat subOnly = fromInts({{1}, {0}, {0}});
  Mat reps = la::quotientRepresentatives<Rational>(subOnly, space);
  REQUIRE(reps.cols() == 2);
  CHECK(reps(0, 0).isZero());
  CHECK(reps(1, 0) == Rational(1));
  CHECK(reps(2, 0).isZero());
  CHECK(reps(2, 1) == Rational(1));
}
