#pragma once

// Exact dense linear algebra over an arbitrary field scalar, on Eigen storage.
// Everything here is deterministic: pivots are always the first usable
// coordinate in canonical (ascending index) order, so echelon forms, kernel
// bases, and particular solutions are reproducible across runs and platforms.

#include <Eigen/Core>
#include <optional>
#include <vector>

namespace rht::linalg {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

// Reduced row echelon form with zero rows dropped. pivots[i] is the column of
// row i's leading 1; the sequence is strictly increasing.
template <class S>
struct Echelon {
  Mat<S> rows;
  std::vector<Eigen::Index> pivots;
};

template <class S>
Echelon<S> rowReduce(Mat<S> a) {
  const S zero(0);
  const Eigen::Index nr = a.rows(), nc = a.cols();
  Eigen::Index r = 0;
  std::vector<Eigen::Index> pivots;
  for (Eigen::Index c = 0; c < nc && r < nr; ++c) {
    Eigen::Index p = -1;
    for (Eigen::Index i = r; i < nr; ++i)
      if (!(a(i, c) == zero)) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) a.row(p).swap(a.row(r));
    const S lead = a(r, c);
    for (Eigen::Index j = c; j < nc; ++j) a(r, j) = a(r, j) / lead;
    for (Eigen::Index i = 0; i < nr; ++i) {
      if (i == r || a(i, c) == zero) continue;
      const S f = a(i, c);
      for (Eigen::Index j = c; j < nc; ++j) a(i, j) = a(i, j) - f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Echelon<S> e;
  e.rows = a.topRows(r);
  e.pivots = std::move(pivots);
  return e;
}

template <class S>
Eigen::Index rank(const Mat<S>& a) {
  return rowReduce<S>(a).rows.rows();
}

// Kernel of a (columns = coordinates of the source space). Result columns are
// the standard free-variable basis vectors, ordered by ascending free column.
template <class S>
Mat<S> kernelBasis(const Mat<S>& a) {
  const Echelon<S> e = rowReduce<S>(a);
  const Eigen::Index nc = a.cols();
  std::vector<bool> isPivot(static_cast<size_t>(nc), false);
  for (Eigen::Index p : e.pivots) isPivot[static_cast<size_t>(p)] = true;
  std::vector<Eigen::Index> freeCols;
  for (Eigen::Index c = 0; c < nc; ++c)
    if (!isPivot[static_cast<size_t>(c)]) freeCols.push_back(c);
  Mat<S> k = Mat<S>::Constant(nc, static_cast<Eigen::Index>(freeCols.size()), S(0));
  for (size_t j = 0; j < freeCols.size(); ++j) {
    k(freeCols[j], static_cast<Eigen::Index>(j)) = S(1);
    for (Eigen::Index i = 0; i < e.rows.rows(); ++i)
      k(e.pivots[static_cast<size_t>(i)], static_cast<Eigen::Index>(j)) =
          -e.rows(i, freeCols[j]);
  }
  return k;
}

// First solution of a x = b in canonical order: all free coordinates zero.
template <class S>
std::optional<Vec<S>> solve(const Mat<S>& a, const Vec<S>& b) {
  const Eigen::Index nr = a.rows(), nc = a.cols();
  Mat<S> aug(nr, nc + 1);
  aug.leftCols(nc) = a;
  aug.col(nc) = b;
  const Echelon<S> e = rowReduce<S>(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == nc) return std::nullopt;
  Vec<S> x = Vec<S>::Constant(nc, S(0));
  for (Eigen::Index i = 0; i < e.rows.rows(); ++i)
    x(e.pivots[static_cast<size_t>(i)]) = e.rows(i, nc);
  return x;
}

// Eliminates the echelon's pivot coordinates from v (v unchanged on a fresh
// span). After reduction v is zero iff v lay in the row span.
template <class S>
Vec<S> reduceAgainst(const Echelon<S>& e, Vec<S> v) {
  const S zero(0);
  for (Eigen::Index i = 0; i < e.rows.rows(); ++i) {
    const Eigen::Index p = e.pivots[static_cast<size_t>(i)];
    if (v(p) == zero) continue;
    const S f = v(p);
    for (Eigen::Index j = 0; j < v.rows(); ++j) v(j) = v(j) - f * e.rows(i, j);
  }
  return v;
}

template <class S>
bool inSpan(const Echelon<S>& e, const Vec<S>& v) {
  const Vec<S> r = reduceAgainst<S>(e, v);
  const S zero(0);
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    if (!(r(i) == zero)) return false;
  return true;
}

// Reduced echelon basis of the span of the given column vectors.
template <class S>
Echelon<S> spanEchelon(const Mat<S>& columns) {
  return rowReduce<S>(Mat<S>(columns.transpose()));
}

// Representatives of span(spaceCols) modulo span(subCols), as columns:
// each space vector is reduced against the subspace, the nonzero residues are
// put in reduced echelon form. Deterministic and canonical.
template <class S>
Mat<S> quotientRepresentatives(const Mat<S>& subCols, const Mat<S>& spaceCols) {
  const Echelon<S> sub = spanEchelon<S>(subCols);
  const S zero(0);
  std::vector<Vec<S>> residues;
  for (Eigen::Index c = 0; c < spaceCols.cols(); ++c) {
    Vec<S> r = reduceAgainst<S>(sub, Vec<S>(spaceCols.col(c)));
    bool nz = false;
    for (Eigen::Index i = 0; i < r.rows() && !nz; ++i) nz = !(r(i) == zero);
    if (nz) residues.push_back(std::move(r));
  }
  Mat<S> stacked(spaceCols.rows(), static_cast<Eigen::Index>(residues.size()));
  for (size_t j = 0; j < residues.size(); ++j)
    stacked.col(static_cast<Eigen::Index>(j)) = residues[j];
  const Echelon<S> reps = spanEchelon<S>(stacked);
  return Mat<S>(reps.rows.transpose());
}

}  // namespace rht::linalg
