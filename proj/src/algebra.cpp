#include "rht/algebra.hpp"

#include <algorithm>
#include <set>

namespace rht {

FreeGCA::FreeGCA(std::vector<Generator> generators, GradingMode mode)
    : gens_(std::move(generators)), mode_(mode) {
  std::set<std::string> names;
  for (auto& g : gens_) {
    if (g.name.empty()) throw GradingError("generator with empty name");
    if (g.degree < 1)
      throw GradingError("generator " + g.name + " has degree " +
                         std::to_string(g.degree) + "; degrees must be >= 1");
    if (!names.insert(g.name).second)
      throw GradingError("duplicate generator name " + g.name);
    switch (mode_) {
      case GradingMode::None:
        if (g.lowerDegree)
          throw GradingError("generator " + g.name +
                             " carries a lower degree in an ungraded algebra");
        break;
      case GradingMode::LowerGraded:
        if (!g.lowerDegree || *g.lowerDegree < 0)
          throw GradingError("generator " + g.name +
                             " needs a lower degree >= 0 in a lower-graded algebra");
        break;
      case GradingMode::PureSplit:
        // Lower degree is derived from parity; an explicit tag must agree.
        {
          const int derived = isOddDegree(g.degree) ? 1 : 0;
          if (g.lowerDegree && *g.lowerDegree != derived)
            throw GradingError("generator " + g.name +
                               " has a lower degree inconsistent with pure split");
          g.lowerDegree = derived;
        }
        break;
    }
  }
  std::sort(gens_.begin(), gens_.end(), [](const Generator& a, const Generator& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.name < b.name;
  });
}

std::optional<int> FreeGCA::findGen(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (gens_[static_cast<size_t>(i)].name == name) return i;
  return std::nullopt;
}

bool FreeGCA::sameAs(const FreeGCA& other) const {
  if (mode_ != other.mode_ || gens_.size() != other.gens_.size()) return false;
  for (size_t i = 0; i < gens_.size(); ++i) {
    const Generator& a = gens_[i];
    const Generator& b = other.gens_[i];
    if (a.name != b.name || a.degree != b.degree || a.lowerDegree != b.lowerDegree)
      return false;
  }
  return true;
}

AlgebraPtr makeAlgebra(std::vector<Generator> generators, GradingMode mode) {
  return std::make_shared<const FreeGCA>(std::move(generators), mode);
}

void requireSameAlgebra(const AlgebraPtr& a, const AlgebraPtr& b,
                        const char* operation) {
  if (a == b) return;
  if (a && b && a->sameAs(*b)) return;
  throw DomainMismatchError(std::string(operation) +
                            ": operands live over different algebras");
}

Monomial Monomial::fromFactors(const FreeGCA& algebra, Factors factors) {
  std::sort(factors.begin(), factors.end());
  Factors merged;
  for (const auto& [id, exp] : factors) {
    if (exp == 0) continue;
    if (id < 0 || id >= algebra.size())
      throw DomainMismatchError("monomial references unknown generator id " +
                                std::to_string(id));
    if (exp < 0)
      throw GradingError("negative exponent on generator " + algebra.gen(id).name);
    if (!merged.empty() && merged.back().first == id)
      merged.back().second += exp;
    else
      merged.emplace_back(id, exp);
  }
  for (const auto& [id, exp] : merged)
    if (isOddDegree(algebra.gen(id).degree) && exp > 1)
      throw GradingError("odd generator " + algebra.gen(id).name +
                         " raised to power " + std::to_string(exp) +
                         "; such a product is identically zero");
  Monomial m;
  m.factors_ = std::move(merged);
  return m;
}

int Monomial::exponentOf(int genId) const {
  for (const auto& [id, exp] : factors_)
    if (id == genId) return exp;
  return 0;
}

int degreeOf(const FreeGCA& algebra, const Monomial& m) {
  int d = 0;
  for (const auto& [id, exp] : m.factors()) d += algebra.gen(id).degree * exp;
  return d;
}

int wordLengthOf(const Monomial& m) {
  int w = 0;
  for (const auto& [id, exp] : m.factors()) {
    (void)id;
    w += exp;
  }
  return w;
}

int lowerDegreeOf(const FreeGCA& algebra, const Monomial& m) {
  if (!algebra.lowerGraded())
    throw GradingError("lower degree requested over an ungraded algebra");
  int d = 0;
  for (const auto& [id, exp] : m.factors())
    d += *algebra.gen(id).lowerDegree * exp;
  return d;
}

std::string toString(const FreeGCA& algebra, const Monomial& m) {
  if (m.isUnit()) return "1";
  std::string out;
  for (const auto& [id, exp] : m.factors()) {
    if (!out.empty()) out += "*";
    out += algebra.gen(id).name;
    if (exp > 1) out += "^" + std::to_string(exp);
  }
  return out;
}

std::optional<SignedMonomial> multiplyMonomials(const FreeGCA& algebra,
                                                const Monomial& a,
                                                const Monomial& b) {
  // Koszul: swapping two elements costs a sign only when both are of odd
  // degree. Merging b's factors into a's sorted list, an odd generator of b
  // must move left past every odd generator of a with a larger id, so the
  // total sign is (-1)^(number of such odd/odd transpositions).
  long transpositions = 0;
  int oddSeenInA = 0;  // odd generators of a with id < current b factor
  Monomial::Factors merged;
  size_t i = 0, j = 0;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  auto isOddGen = [&](int id) { return isOddDegree(algebra.gen(id).degree); };
  int totalOddInA = 0;
  for (const auto& [id, exp] : fa)
    if (isOddGen(id)) totalOddInA += exp;  // exponent is 1 for odd gens
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i].first < fb[j].first)) {
      merged.push_back(fa[i]);
      if (isOddGen(fa[i].first)) ++oddSeenInA;
      ++i;
    } else if (i == fa.size() || fb[j].first < fa[i].first) {
      if (isOddGen(fb[j].first)) transpositions += totalOddInA - oddSeenInA;
      merged.push_back(fb[j]);
      ++j;
    } else {
      // Same generator on both sides.
      if (isOddGen(fa[i].first)) return std::nullopt;  // odd square, zero
      merged.emplace_back(fa[i].first, fa[i].second + fb[j].second);
      ++i;
      ++j;
    }
  }
  SignedMonomial out;
  out.monomial = Monomial::fromFactors(algebra, std::move(merged));
  out.sign = (transpositions % 2 == 0) ? 1 : -1;
  return out;
}

namespace {

void enumerateSlice(const FreeGCA& algebra, int fromGen, int remaining,
                    Monomial::Factors& prefix, std::vector<Monomial>& out) {
  if (remaining == 0) {
    Monomial::Factors copy = prefix;
    out.push_back(Monomial::fromFactors(algebra, std::move(copy)));
    return;
  }
  if (fromGen >= algebra.size()) return;
  const Generator& g = algebra.gen(fromGen);
  const int maxExp = isOddDegree(g.degree) ? 1 : remaining / g.degree;
  for (int e = 0; e <= maxExp; ++e) {
    if (e * g.degree > remaining) break;
    if (e > 0) prefix.emplace_back(fromGen, e);
    enumerateSlice(algebra, fromGen + 1, remaining - e * g.degree, prefix, out);
    if (e > 0) prefix.pop_back();
  }
}

}  // namespace

std::vector<Monomial> basisSlice(const FreeGCA& algebra, int degree,
                                 std::optional<int> minWordLength,
                                 std::optional<int> lowerDegree) {
  if (degree < 0) throw PreconditionError("basisSlice: negative degree");
  if (lowerDegree && !algebra.lowerGraded())
    throw GradingError("basisSlice: lower-degree filter over an ungraded algebra");
  Monomial::Factors prefix;
  std::vector<Monomial> all;
  enumerateSlice(algebra, 0, degree, prefix, all);
  std::vector<Monomial> out;
  for (auto& m : all) {
    if (minWordLength && wordLengthOf(m) < *minWordLength) continue;
    if (lowerDegree && lowerDegreeOf(algebra, m) != *lowerDegree) continue;
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rht
