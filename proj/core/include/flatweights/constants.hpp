#pragma once

#include <utility>
#include <vector>

#include "flatweights/grid.hpp"

// Weight constants and oscillation seminorms, each a supremum over the cube
// family. Family refinement gives monotone lower bounds for the continuum
// quantities; reports always carry the family they were computed on.

namespace flatweights {

struct SupResult {
  double value = 0.0;
  Cube witness{};  // first cube attaining the sup, in enumeration order
};

GridFn log_fn(const Weight& w);  // cellwise log, no clamping

// sup_Q avg(w,Q) * avg(sigma,Q)^(p-1) with sigma = w^(1-p'). Throws
// ExponentOverflow when the dual weight is not representable; see
// a_p_from_log for the scale-free path.
SupResult a_p(const Weight& w, double p, const CubeFamily& fam);

// Same supremum evaluated on centered logs: per cube, the factors
// avg(exp(g - g_Q)) * avg(exp(-(g - g_Q)/(p-1)))^(p-1) with g = log w.
// The centering cancels exactly, making the result scale invariant and
// immune to overflow for any positive weight.
SupResult a_p_from_log(const GridFn& log_w, double p, const CubeFamily& fam);

// sup_Q avg(w,Q) * max_{cells in Q} (1/w).
SupResult a_1(const Weight& w, const CubeFamily& fam);

// Fujii-Wilson: sup_Q (1/w(Q)) \int_Q M(w chi_Q), M the local maximal over
// the family. Equals 1 exactly iff all cells are equal. Aligned(1,1) runs
// are O(N^(3n)) per cube scan; keep n=2 grids small there.
SupResult fujii_wilson(const Weight& w, const CubeFamily& fam);

// sup_Q avg(w,Q) * exp(-avg(log w, Q)): exponential A_infty characteristic.
SupResult hruscev(const Weight& w, const CubeFamily& fam);

// sup_Q (1/w(Q)) \int_Q (1 + log+(w/w_Q)) w.
SupResult log_ainfty(const Weight& w, const CubeFamily& fam);

// Mean oscillation seminorms: sup_Q avg_Q|f - f_Q|, and the weighted
// variant about the weighted mean f_{Q,w}.
SupResult bmo(const GridFn& f, const CubeFamily& fam);
SupResult bmo_w(const GridFn& f, const Weight& w, const CubeFamily& fam);

// Observed doubling constant: sup over cubes with admissible 2Q (per mode)
// of w(2Q)/w(Q). Throws NoAdmissibleCube when every double exits the domain
// under RequireInside (only the L=0 grid, where the sole cube is the domain).
SupResult doubling(const Weight& w, const CubeFamily& fam,
                   DoubleMode mode = DoubleMode::RequireInside);

// Luxemburg gauge of f on Q under w: the smallest lambda with weighted
// average of exp(|f|/lambda) at most 2, by bisection to 1e-10 relative.
// Returns |c|/log 2 exactly when |f| is constant on Q, 0 when f == 0 on Q.
double exp_luxemburg(const GridFn& f, const Cube& q, const Weight& w);

// r* = sup{ r > 0 : sup_Q avg_Q exp(r|log w - (log w)_Q|) <= bound }.
// Bisected on [1e-6, 1e6] to 1e-8 relative; the returned value is the last
// endpoint at which every family cube satisfied the bound as computed, so
// downstream algebra may rely on the inequality holding verbatim at r*.
// Constant w (or feasibility at the top of the bracket) returns +inf; a
// positive finite weight can never fail at the bottom, but that case would
// return 0. Witness is the binding cube at r*.
SupResult jn_sup_r(const Weight& w, const CubeFamily& fam, double bound = 3.0);

struct ConstantsReport {
  GridSpec grid;
  CubeFamily family;
  DoubleMode doubling_mode = DoubleMode::RequireInside;
  std::vector<std::pair<double, SupResult>> a_p_values;  // keyed by requested p
  SupResult a_1;
  SupResult fujii_wilson;
  SupResult hruscev;
  SupResult log_ainfty;
  SupResult bmo_log;    // bmo(log w)
  SupResult bmo_w_log;  // bmo_w(log w, w)
  SupResult doubling;
  bool doubling_defined = true;  // false when no cube admits a double
  SupResult jn_r_star;           // value +inf when every bracketed r works
};

ConstantsReport constants_report(const Weight& w, const std::vector<double>& ps,
                                 const CubeFamily& fam,
                                 DoubleMode mode = DoubleMode::RequireInside);

}  // namespace flatweights
