#pragma once

#include <string>
#include <vector>

#include "flatweights/checks.hpp"
#include "flatweights/constants.hpp"
#include "flatweights/families.hpp"

// Machine-readable serializations. JSON strings rather than json objects so
// the vendored parser stays out of the installed interface. All output is a
// deterministic function of the inputs; reruns are byte-identical.

namespace flatweights {

// Schema v 1: n, L, family, doubling_mode, then one {value, witness} object
// per constant: a_p (array keyed by p), a_1, fujii_wilson, hruscev,
// log_ainfty, bmo_log, bmo_w_log, doubling, jn_r_star. Witness anchors are
// always two coordinates (second is 0 for n=1). Non-finite values serialize
// as null with a flag: jn_r_star carries "finite", doubling "defined".
std::string constants_report_json(const ConstantsReport& r);

// JSON array, one {id, lhs, rhs, ratio, pass, tol, witness, params} per
// check; non-finite numbers become the strings "inf", "-inf", "nan".
std::string check_results_json(const std::vector<CheckResult>& results);

struct SweepSpec {
  GridSpec grid;
  FlatShape shape = FlatShape::Sin;
  std::vector<double> deltas;  // one CSV row per entry, in order
  CubeFamily family;
  double tau = 0.0;        // 0 = 2^(n+1); enters the p_star_w column only
  double tau_prime = 0.0;  // 0 = 2 log(3) tau
  double kappa = 1.0;
};

// CSV over the flat family w = 1 + delta * shape. Columns (schema column
// v = 1, %.17g values, non-finite as inf/-inf/nan):
//   v, delta, fujii_wilson_m1, hruscev_m1, bmo_log, bmo_w_log, jn_r_star,
//   embed_p, a_p_embed, embed_bound, embed_ratio, doubling, p_star_w,
//   implied_kappa, implied_tsutsui_cn, rhi_ratio
// p_star_w is the p = 1 exponent (nan for n = 1, where no p < n exists);
// rhi_ratio is evaluated at the admissible endpoint exponent.
std::string run_sweep(const SweepSpec& spec);

}  // namespace flatweights
