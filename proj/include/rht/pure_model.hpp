#pragma once

// Pure Sullivan models: every even generator is closed and every odd
// generator's differential lands in the polynomial part Lambda(V^even). The
// algebra carries the pure-split lower grading (even word part 0, odd word
// length as the lower degree), the differential is bigraded (lower degree -1),
// and positive-ellipticity diagnostics live here: the vanishing of
// positive-lower-degree cohomology and the Euler characteristic report.

#include <optional>
#include <vector>

#include "rht/cdga.hpp"
#include "rht/differential.hpp"
#include "rht/presentation.hpp"

namespace rht {

struct PureModel {
  AlgebraPtr algebra;        // pure-split grading mode
  Differential differential; // bigraded; evens closed, odd images polynomial
  // Provenance when built from a presentation; empty for assembled models.
  std::optional<Presentation> source;
  // sum_j (|y_j| + 1) - sum_i |x_i|: the socle degree of the quotient when the
  // model is positively elliptic, and the reference point for cap choices.
  int formalDimension = 0;
  std::vector<int> evenIds, oddIds;

  Cdga asCdga() const { return Cdga::free(algebra, differential); }
  int maxOddDegree() const;
};

// Validates the pure shape of a hand-assembled model (no presentation
// provenance, no balance requirement between even and odd counts).
PureModel makePureModel(AlgebraPtr algebra, Differential differential);

// Lambda(x_1..x_n, y_1..y_n) with d(y_j) = R_j and |y_j| = |R_j| - 1, for a
// homogeneous presentation certified regular. Post-verified: the model's
// betti numbers reproduce the quotient dimensions through the formal
// dimension (a failure is a bug, not an input error).
PureModel pureModelFromPresentation(const Presentation& p);

struct HPlusReport {
  bool zero = true;
  int degree = -1;       // witness bidegree when zero == false
  int lowerDegree = -1;
  std::optional<Element> witness;  // non-exact cocycle of positive lower degree
};

// True iff every cocycle of positive lower degree and cohomological degree
// <= cap is a coboundary. Requires cap >= formalDimension + max |y_j| so a
// vanishing verdict covers the whole critical window.
HPlusReport checkHPlusZero(const PureModel& m, int cap);

struct EulerReport {
  long long euler = 0;  // alternating sum of betti numbers
  int chiPi = 0;        // dim V^even - dim V^odd
  int formalDimension = 0;
  bool positivelyElliptic = false;  // euler > 0
};

// Requires the cohomology to vanish strictly above the formal dimension
// within cap (checked; failure means the cap or the model is wrong). The
// classical equivalences — euler > 0, chiPi == 0, odd betti all zero — are
// verified to agree with each other; disagreement is reported as an internal
// theory violation.
EulerReport eulerReport(const PureModel& m, int cap);

}  // namespace rht
