#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatweights/checks_types.hpp"
#include "flatweights/constants.hpp"

// Inequality checks. Each returns a CheckResult with the worst cube as
// witness and the quantities that entered the bound under params. Two
// tolerance regimes: kGuaranteedTol for inequalities provable verbatim for
// discrete averages, 0 (margins logged) for empirically expected ones.

namespace flatweights {

// Largest admissible reverse-Holder exponent bump: 1/(2^(n+1)(fw-1)),
// +inf for fw = 1 (constant weights admit every eps).
double rhi_eps_limit(double fujii_wilson_value, int dim);

// avg_Q(w^(1+eps)) <= 2 fw avg_Q(w)^(1+eps) at the worst cube. Evaluated on
// w/max(w) so the powers cannot overflow (both sides scale alike). Throws
// EpsilonOutOfRange outside [0, rhi_eps_limit].
CheckResult check_rhi(const Weight& w, double eps, const CubeFamily& fam);

// Subset absorption: w(E)/w(Q) <= 2 fw (|E|/|Q|)^theta with
// theta = 1/(1+2^(n+1)(fw-1)). subset holds flat cell indices inside Q.
CheckResult check_subset(const Weight& w, const Cube& q,
                         const std::vector<std::int64_t>& subset,
                         const CubeFamily& fam);

// Left-openness of A_p: with sigma the dual weight and
// eps = (p-1)/(2^(n+1)([sigma]-1)+1), checks
// a_{p-eps}(w) <= (2[sigma])^(p-1) a_p(w). Nearly constant weights push
// p-eps to 1; that degenerate case checks a_1 instead (a_1 >= a_q for all
// q > 1, so passing is still conclusive).
CheckResult check_left_open(const Weight& w, double p, const CubeFamily& fam);

// Observed doubling against exp(kappa n (4 fw)^(1+2^(n+1)(fw-1))). The
// smallest kappa making the bound hold is reported in params.
CheckResult check_doubling_bound(const Weight& w, const CubeFamily& fam,
                                 DoubleMode mode = DoubleMode::RequireInside,
                                 double kappa = 1.0);

// Three-link chain, ids bmo_chain_i/_ii/_iii:
//   (i)   bmo_w(log w, w) <= 8 (log_ainfty(w) - 1)        on the caller family
//   (ii)  log_ainfty(w) - 1 <= 2^n (fw(w) - 1)            dyadic both sides
//   (iii) bmo_w(log w, w) <= 2^(n+3) (fw(w) - 1)          dyadic both sides
// (ii) needs the dyadic covering argument, so it and the composed (iii) are
// pinned to the dyadic family regardless of the caller's.
std::array<CheckResult, 3> check_bmo_chain(const Weight& w, const CubeFamily& fam);

// bmo(f) <= budget * log(2 hruscev(w)) * bmo_w(f, w). Without a budget the
// result is record-only (pass = true) and params carry the implied factor
// bmo(f) / (log(2 hruscev) bmo_w).
CheckResult check_tsutsui(const GridFn& f, const Weight& w, const CubeFamily& fam,
                          std::optional<double> budget = std::nullopt);

// The exponential-integrability embedding: r* = jn_sup_r(w, family, 3),
// p = 1 + 1/r*, then a_p(w, p) <= 3^(2(p-1)). Falls out of Jensen plus the
// splitting of the exponential moment, both verbatim for discrete averages,
// so it must pass whenever r* is finite; evaluated on centered logs
// (a_p_from_log), which is what the derivation actually bounds.
// Constant (or indistinguishably flat) weights return p = 1, trivial pass.
struct EmbeddingResult {
  double p = 1.0;
  CheckResult check;
};
EmbeddingResult embedding_via_jn(const Weight& w, const CubeFamily& fam);

// Flat-weight embedding with caller constants: p = 1 + tau (fw - 1),
// a_p(w, p) <= exp(tau_prime (fw - 1)). fw = 1 passes trivially.
CheckResult check_embedding(const Weight& w, double tau, double tau_prime,
                            const CubeFamily& fam);

// Piecewise exponent formula, pure arithmetic on a given fw:
// fw <= 1 + c_n: p = 1 + tau (fw - 1), bound exp(tau_prime (fw - 1));
// otherwise p = exp(C_n fw), bound exp(exp(C_n fw)).
struct PiecewiseEmbedding {
  double p = 1.0;
  double bound = 1.0;
  bool small_branch = true;
};
PiecewiseEmbedding embedding_piecewise(double fw, double c_n, double C_n,
                                       double tau, double tau_prime);

// bmo(f) <= C bmo_w(f, w); implied C recorded.
CheckResult check_bmo_vs_bmow(const GridFn& f, const Weight& w, double C,
                              const CubeFamily& fam);

// --- registry ---------------------------------------------------------------

struct CheckOptions {
  std::vector<double> ps{2.0};      // left_open runs once per entry
  std::optional<double> eps;        // rhi; default rhi_eps_limit
  double tau = 0.0;                 // 0 = default 2^(n+1)
  double tau_prime = 0.0;           // 0 = default 2 log(3) tau
  double kappa = 1.0;
  double c_n = 1.0;                 // embed_piecewise branch threshold
  double big_cn = 1.0;              // embed_piecewise large-branch rate
  std::optional<double> tsutsui_budget;  // absent = record-only
  double bmo_factor = 4.0;          // bmo_vs_bmow budget (flat-corpus bound)
  DoubleMode mode = DoubleMode::RequireInside;
};

// Stable identifiers accepted by run_checks.
const std::vector<std::string>& check_ids();

// Runs the named checks on w (f-dependent checks use f = log w; subset uses
// the lexicographic first half of the domain cube). Unknown ids throw.
std::vector<CheckResult> run_checks(const Weight& w,
                                    const std::vector<std::string>& ids,
                                    const CubeFamily& fam,
                                    const CheckOptions& opts = {});

}  // namespace flatweights
