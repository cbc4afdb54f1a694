#pragma once

// Free graded-commutative algebras Lambda(V): polynomial on even-degree
// generators, exterior on odd-degree ones. Generators live in a canonical
// order (degree ascending, then name), and a monomial is a sorted sparse
// exponent list over generator ids in that order. Odd generators never carry
// an exponent above 1 — such products are identically zero and are
// short-circuited before a monomial is ever formed.

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rht/errors.hpp"

namespace rht {

// Second (lower) grading mode of an algebra.
//  None:        cohomological degree only.
//  LowerGraded: each generator carries an explicit lowerDegree >= 0.
//  PureSplit:   lower degrees are derived from parity (even -> 0, odd -> 1),
//               the convention for pure models Lambda(V0 + V1).
enum class GradingMode { None, LowerGraded, PureSplit };

struct Generator {
  std::string name;
  int degree = 0;
  std::optional<int> lowerDegree = std::nullopt;
};

inline bool isOddDegree(int degree) { return degree % 2 != 0; }

class FreeGCA {
 public:
  // Sorts the generators into canonical order and validates: degree >= 1,
  // unique nonempty names, lower degrees consistent with the grading mode.
  FreeGCA(std::vector<Generator> generators, GradingMode mode = GradingMode::None);

  int size() const { return static_cast<int>(gens_.size()); }
  const Generator& gen(int id) const { return gens_.at(static_cast<size_t>(id)); }
  const std::vector<Generator>& generators() const { return gens_; }
  std::optional<int> findGen(std::string_view name) const;
  GradingMode gradingMode() const { return mode_; }
  bool lowerGraded() const { return mode_ != GradingMode::None; }
  bool sameAs(const FreeGCA& other) const;

 private:
  std::vector<Generator> gens_;
  GradingMode mode_;
};

using AlgebraPtr = std::shared_ptr<const FreeGCA>;

AlgebraPtr makeAlgebra(std::vector<Generator> generators,
                       GradingMode mode = GradingMode::None);

// Throws DomainMismatchError unless both algebras are structurally identical.
void requireSameAlgebra(const AlgebraPtr& a, const AlgebraPtr& b,
                        const char* operation);

// Sorted sparse exponent list (generator id ascending, exponents >= 1). The
// default-constructed monomial is the unit 1. The intrinsic ordering is
// lexicographic on the factor list; inside a fixed-degree slice this is the
// canonical monomial order used for bases, pivots, and serialization.
class Monomial {
 public:
  using Factors = std::vector<std::pair<int, int>>;

  Monomial() = default;
  static Monomial fromFactors(const FreeGCA& algebra, Factors factors);

  const Factors& factors() const { return factors_; }
  bool isUnit() const { return factors_.empty(); }
  int exponentOf(int genId) const;

  friend auto operator<=>(const Monomial& a, const Monomial& b) = default;

 private:
  Factors factors_;
};

int degreeOf(const FreeGCA& algebra, const Monomial& m);
int wordLengthOf(const Monomial& m);
// Requires a lower-graded algebra.
int lowerDegreeOf(const FreeGCA& algebra, const Monomial& m);
std::string toString(const FreeGCA& algebra, const Monomial& m);

// Koszul product of two monomials: nullopt when an odd generator squares to
// zero, otherwise the merged monomial and the sign (+1/-1) accumulated from
// moving odd factors past each other.
struct SignedMonomial {
  Monomial monomial;
  int sign = 1;
};
std::optional<SignedMonomial> multiplyMonomials(const FreeGCA& algebra,
                                                const Monomial& a,
                                                const Monomial& b);

// Complete, duplicate-free, canonically ordered list of the monomials of the
// given cohomological degree, optionally restricted to word length >= a bound
// and/or to an exact lower degree (lower-graded algebras only).
std::vector<Monomial> basisSlice(const FreeGCA& algebra, int degree,
                                 std::optional<int> minWordLength = std::nullopt,
                                 std::optional<int> lowerDegree = std::nullopt);

}  // namespace rht
