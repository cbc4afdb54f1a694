#pragma once

// Negative-degree derivations of an evenly generated quotient algebra
// Q[x1..xn]/(R1..Rn), and the verdict they induce: the algebra admits no
// nonzero derivation of negative degree iff every scanned shift produces an
// empty solution space.
//
// A degree-k derivation theta is determined by the images theta(x_i), each a
// quotient class of degree |x_i| + k, subject to theta(R_j) == 0 in the
// quotient. Because all generators are even, the Leibniz extension is the
// polynomial chain rule: theta(R) = sum_i dR/dx_i * theta(x_i), with no signs.

#include <map>
#include <string>
#include <vector>

#include "rht/element.hpp"
#include "rht/presentation.hpp"

namespace rht {

struct DerivationSpace {
  int shift = 0;  // the (negative) degree of the derivations
  // Basis of the solution space: each entry maps generator id -> image in
  // quotient normal form (degree |x_i| + shift); zero images are omitted.
  std::vector<std::map<int, Element>> basis;
  bool empty() const { return basis.empty(); }
  int dimension() const { return static_cast<int>(basis.size()); }
};

struct DerivationOptions {
  // Diagnostic hook: skip the regularity precondition so the solver can be
  // exercised on non-elliptic quotients. Production callers leave this off.
  bool waiveRegularity = false;
};

DerivationSpace derivationSpace(const Presentation& p, int shift,
                                const DerivationOptions& options = {});

struct HalperinVerdict {
  bool holds = false;
  std::vector<DerivationSpace> evidence;  // one per scanned shift
  std::vector<int> scannedShifts;
  std::string oddShiftNote;  // records why odd shifts need no scan
};

// Scans every even shift from -2 down to -(max|x_i| - 2) plus each -|x_i|
// (covering constant images); odd shifts are skipped because the quotient
// vanishes in odd degrees. holds == true iff all scanned spaces are empty;
// otherwise the nonzero derivations stand as re-checkable certificates.
HalperinVerdict meierVerdict(const Presentation& p);

}  // namespace rht
