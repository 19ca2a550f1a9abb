#pragma once

#include <optional>
#include <vector>

#include "flatweights/checks_types.hpp"
#include "flatweights/maximal.hpp"

// Gradients, Riesz potentials, Lorentz norms on normalized weighted measures,
// Sobolev-type exponents, and the local Poincare-Sobolev checks built on them.

namespace flatweights {

// Per-axis forward differences (f(x+h e_i) - f(x))/h, one-sided backward at
// the upper boundary. Exact for affine data. Needs L >= 1.
std::vector<GridFn> gradient(const GridFn& f);
GridFn gradient_magnitude(const GridFn& f);  // Euclidean norm of components

// Fractional integral localized to Q: at each cell center x of Q,
//   sum over cells y of Q of f(y) K(x,y),
// K = |x-y|^(alpha-n) h^n off the diagonal; the self-cell weight is the
// exact integral of the kernel over the cell (n=1), or over the
// area-equivalent disc of radius h/sqrt(pi) (n=2). Throws AlphaOutOfRange
// unless 0 < alpha < n. O(|Q|^2), parallel over target cells.
LocalGridFn riesz(const GridFn& f, double alpha, const Cube& q);

// Probability measure w dx / w(Q) on the cells of Q.
struct NormalizedMeasure {
  GridSpec grid;
  Cube cube;
  std::vector<double> mass;  // per cell of Q, lexicographic, sums to 1
};
NormalizedMeasure normalized_measure(const Weight& w, const Cube& q);

// Decreasing rearrangement of |f| as steps (value, mass), equal values
// merged, masses summing to 1.
struct RearrangementStep {
  double value = 0.0;
  double mass = 0.0;
};
std::vector<RearrangementStep> rearrangement(const GridFn& f,
                                             const NormalizedMeasure& mu);
std::vector<RearrangementStep> rearrangement(const LocalGridFn& f,
                                             const NormalizedMeasure& mu);

// Lorentz exponents; inner = +inf selects the weak norm.
struct LorentzParams {
  double q = 1.0;  // outer, > 0
  double p = 1.0;  // inner, > 0 or +inf
  static LorentzParams weak(double q);
};

// Finite inner exponent: ( integral_0^1 (t^(1/q) f*(t))^p dt/t )^(1/p),
// evaluated in closed form on the step rearrangement. Weak: the sup of
// lambda mu(|f|>lambda)^(1/q), attained at step breakpoints.
double lorentz_norm(const GridFn& f, const LorentzParams& lp,
                    const NormalizedMeasure& mu);
double lorentz_norm(const LocalGridFn& f, const LorentzParams& lp,
                    const NormalizedMeasure& mu);

// p*_w from 1/p - 1/p*_w = (1/n) / (1 + tau (fw - 1)); the classical np/(n-p)
// at fw = 1. Requires 1 <= p < n, fw >= 1, tau > 0; ExponentBlowup if the
// reciprocal degenerates.
double sobolev_exponent(double p, double fw, double tau, int n);

// Exponent q for the weighted fractional embedding at alpha = 1, two rates:
//   Inherited: 1/p - 1/q = (1/n) t s / (1 + r (t s - 1)),      t = 2^(n+1)
//   Flat:      1/p - 1/q = (1/n) (1 + t(s-1)) / (1 + r t (s-1))
// with s the dual weight's Fujii-Wilson constant. Flat recovers the
// classical exponent as s -> 1; Inherited does not (reported contrast).
// Requires 1 <= r <= p < n, s >= 1.
enum class RefineVariant { Inherited, Flat };
double refined_sobolev_exponent(double p, double r, double sigma_fw, int n,
                                RefineVariant variant);

// Local Poincare-Sobolev on Q (n = 2 only, 1 <= p < n): LHS is the strong
// L^{p*_w} norm (or Lorentz (p*_w, p) norm) of f - f_Q under w dx/w(Q),
// centered at the unweighted mean; RHS' = p* (1+tau(fw-1))^(1/p) ell(Q)
// times the weighted p-mean of |grad f| over Q, with p* = np/(n-p) and the
// gradient taken on the full grid. fw is the dyadic Fujii-Wilson constant.
// Reports implied_cn = LHS/RHS'; passes against the budget (record-only
// when absent). Constant f gives a degenerate pass.
enum class PoincareVariant { Strong, Lorentz };
CheckResult check_poincare_sobolev(const GridFn& f, const Weight& w, double p,
                                   const Cube& q, double tau,
                                   PoincareVariant variant,
                                   std::optional<double> budget = std::nullopt);

// Weak-norm bound for the fractional integral: with 1/p - 1/q_r = (alpha/n)/r,
//   || I_alpha f ||_{L^{q_r,inf}(Q, w dx/w(Q))}
//     <= (c_n/alpha) p*_alpha [w]_{A_r}^(1/p) ell(Q)^alpha (avg_w |f|^p)^(1/p),
// p*_alpha = np/(n - alpha p), [w]_{A_r} over the given family (a_1 at r=1).
// Requires 0 < alpha < n, 1 <= p < n/alpha, 1 <= r <= p. Implied c_n
// reported; record-only without a budget.
CheckResult check_weak_riesz(const GridFn& f, const Weight& w, double p,
                             double alpha, double r, const Cube& q,
                             const CubeFamily& fam,
                             std::optional<double> budget = std::nullopt);

// Pointwise subrepresentation |f - f_Q| <= C I_1(|grad f| chi_Q) on Q:
// implied C = max over cells of the quotient; cells where the denominator
// vanishes are excluded and counted in params (cannot happen for f
// nonconstant on Q). Throws DegenerateFunction for constant f.
CheckResult check_subrepresentation(const GridFn& f, const Cube& q,
                                    std::optional<double> budget = std::nullopt);

}  // namespace flatweights
