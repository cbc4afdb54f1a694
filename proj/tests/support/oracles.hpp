#pragma once

// Independent brute-force oracles for cross-checking the engine. These
// deliberately avoid rht::linalg and the Window machinery: ranks come from a
// plain row-reduction over vector-of-vector storage, and betti numbers from
// the rank-nullity bookkeeping dim ker - dim im.

#include <vector>

#include "rht/cdga.hpp"
#include "rht/rational.hpp"

namespace rht::testsupport {

using DenseMatrix = std::vector<std::vector<Rational>>;

// Row reduction with first-nonzero pivoting; returns the rank.
int denseRank(DenseMatrix m);

// Betti numbers of a relation-free CDGA for degrees 0..cap, computed from
// slice dimensions and dense ranks only.
std::vector<int> denseBetti(const Cdga& cdga, int cap);

// Total dimension of the window (sum of slice dimensions through cap+1),
// used to keep oracle comparisons within their contract.
int windowDimension(const Cdga& cdga, int cap);

}  // namespace rht::testsupport
