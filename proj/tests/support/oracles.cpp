#include "oracles.hpp"

#include <stdexcept>

#include "rht/differential.hpp"
#include "rht/element.hpp"

namespace rht::testsupport {

int denseRank(DenseMatrix m) {
  if (m.empty()) return 0;
  const std::size_t cols = m.front().size();
  std::size_t pivotRow = 0;
  int rank = 0;
  for (std::size_t col = 0; col < cols && pivotRow < m.size(); ++col) {
    std::size_t found = m.size();
    for (std::size_t r = pivotRow; r < m.size(); ++r) {
      if (!m[r][col].isZero()) {
        found = r;
        break;
      }
    }
    if (found == m.size()) continue;
    std::swap(m[pivotRow], m[found]);
    const Rational inv = Rational(1) / m[pivotRow][col];
    for (std::size_t c = col; c < cols; ++c) m[pivotRow][c] = m[pivotRow][c] * inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == pivotRow || m[r][col].isZero()) continue;
      const Rational factor = m[r][col];
      for (std::size_t c = col; c < cols; ++c)
        m[r][c] = m[r][c] - factor * m[pivotRow][c];
    }
    ++pivotRow;
    ++rank;
  }
  return rank;
}

namespace {

// d_k as a dense matrix in the monomial bases of the free slices.
DenseMatrix denseDifferentialMatrix(const Cdga& cdga, int degree) {
  const auto sourceBasis = basisSlice(*cdga.algebra, degree);
  const auto targetBasis = basisSlice(*cdga.algebra, degree + 1);
  DenseMatrix m(targetBasis.size(),
                std::vector<Rational>(sourceBasis.size(), Rational(0)));
  for (std::size_t j = 0; j < sourceBasis.size(); ++j) {
    const Element image = applyDifferential(
        cdga.differential, Element::term(cdga.algebra, sourceBasis[j], Rational(1)));
    for (std::size_t i = 0; i < targetBasis.size(); ++i)
      m[i][j] = image.coefficientOf(targetBasis[i]);
  }
  return m;
}

}  // namespace

std::vector<int> denseBetti(const Cdga& cdga, int cap) {
  if (cdga.hasRelations())
    throw std::logic_error("denseBetti oracle handles relation-free CDGAs only");
  std::vector<int> betti;
  betti.reserve(static_cast<std::size_t>(cap) + 1);
  int previousRank = 0;  // rank of d_{-1} = 0
  for (int k = 0; k <= cap; ++k) {
    const int dim = static_cast<int>(basisSlice(*cdga.algebra, k).size());
    const int rank = denseRank(denseDifferentialMatrix(cdga, k));
    betti.push_back(dim - rank - previousRank);
    previousRank = rank;
  }
  return betti;
}

int windowDimension(const Cdga& cdga, int cap) {
  int total = 0;
  for (int k = 0; k <= cap + 1; ++k)
    total += static_cast<int>(basisSlice(*cdga.algebra, k).size());
  return total;
}

}  // namespace rht::testsupport
