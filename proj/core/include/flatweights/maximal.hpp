#pragma once

#include "flatweights/checks_types.hpp"
#include "flatweights/grid.hpp"

namespace flatweights {

// A grid function defined only on the cells of one cube, lexicographic order.
struct LocalGridFn {
  GridSpec grid;
  Cube cube;
  std::vector<double> values;
};

// Local uncentered maximal function of w*chi_Q at every cell x of Q:
//   M(x) = max over family cubes R containing x of avg(w*chi_Q, R),
// where candidates may extend past Q (the integrand vanishes there) but not
// past the domain, and the single cell is always a candidate, so M >= w on Q.
// With Q itself in the family this gives M >= avg(w, Q) on Q.
LocalGridFn local_maximal(const Weight& w, const Cube& q, const CubeFamily& fam);

// Same, but reuses a prebuilt prefix table of w (box numerators are O(1)).
LocalGridFn local_maximal(const Weight& w, const PrefixSums& pw, const Cube& q,
                          const CubeFamily& fam);

// \int_Q M dx.
double integrate(const LocalGridFn& f);

// Reverse weak (1,1) inequality at threshold t > avg(w, Q):
//   (1/t) \int_{{w>t} cap Q} w  <=  2^n |{x in Q : M(w chi_Q)(x) > t}|.
// Provable for the dyadic family by the stopping-cube argument; other
// families are exploratory. Throws InvalidThreshold when t <= avg(w, Q).
CheckResult reverse_weak_11(const Weight& w, const Cube& q, double t,
                            const CubeFamily& fam);

}  // namespace flatweights
