#include "flatweights/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scan.hpp"

namespace flatweights {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double pow2(int e) { return std::ldexp(1.0, e); }
}  // namespace

double rhi_eps_limit(double fujii_wilson_value, int dim) {
  if (fujii_wilson_value <= 1.0) return kInf;
  return 1.0 / (pow2(dim + 1) * (fujii_wilson_value - 1.0));
}

CheckResult check_rhi(const Weight& w, double eps, const CubeFamily& fam) {
  const GridSpec& g = w.fn.grid;
  const double fw = fujii_wilson(w, fam).value;
  const double lim = rhi_eps_limit(fw, g.dim);
  if (!(eps >= 0.0) || eps > lim)
    throw EpsilonOutOfRange("rhi exponent outside [0, 1/(2^(n+1)(fw-1))]");

  const double wmax = *std::max_element(w.fn.values.begin(), w.fn.values.end());
  std::vector<double> v(w.fn.values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = w.fn.values[i] / wmax;
  const PrefixSums pv(g, v);
  const auto sides = [&](const Cube& q) {
    double num = 0.0;
    for_each_cell(q, g, [&](std::int64_t i) {
      num += std::pow(v[static_cast<std::size_t>(i)], 1.0 + eps);
    });
    num /= static_cast<double>(cube_cell_count(q, g));
    const double den = 2.0 * fw * std::pow(pv.cube_average(q), 1.0 + eps);
    return std::pair{num, den};
  };
  const SupResult worst = detail::sup_scan(g, fam, [&](const Cube& q) {
    const auto [num, den] = sides(q);
    return num / den;
  });
  const auto [lhs, rhs] = sides(worst.witness);
  CheckResult r = make_check("rhi", lhs, rhs, 0.0, worst.witness);
  r.params["eps"] = eps;
  r.params["eps_limit"] = lim;
  r.params["fujii_wilson"] = fw;
  return r;
}

CheckResult check_subset(const Weight& w, const Cube& q,
                         const std::vector<std::int64_t>& subset,
                         const CubeFamily& fam) {
  const GridSpec& g = w.fn.grid;
  validate_cube(q, g);
  if (subset.empty()) throw EmptySubset("subset check needs a nonempty cell set");

  std::vector<std::int64_t> cells(subset);
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  const Box qb = to_box(q, g);
  for (std::int64_t i : cells) {
    if (i < 0 || i >= g.cell_count()) throw CubeOutOfBounds("subset cell outside grid");
    const auto c = cell_coords(i, g);
    const bool inside = c[0] >= qb.lo[0] && c[0] < qb.hi[0] &&
                        (g.dim == 1 || (c[1] >= qb.lo[1] && c[1] < qb.hi[1]));
    if (!inside) throw CubeOutOfBounds("subset cell outside the cube");
  }

  const double fw = fujii_wilson(w, fam).value;
  const double theta = 1.0 / (1.0 + pow2(g.dim + 1) * (fw - 1.0));
  double we = 0.0;
  for (std::int64_t i : cells) we += w.fn[i];
  double wq = 0.0;
  for_each_cell(q, g, [&](std::int64_t i) { wq += w.fn[i]; });
  const double frac = static_cast<double>(cells.size()) /
                      static_cast<double>(cube_cell_count(q, g));
  const double lhs = we / wq;
  const double rhs = 2.0 * fw * std::pow(frac, theta);
  CheckResult r = make_check("subset", lhs, rhs, 0.0, q);
  r.params["theta"] = theta;
  r.params["fujii_wilson"] = fw;
  r.params["fraction"] = frac;
  return r;
}

CheckResult check_left_open(const Weight& w, double p, const CubeFamily& fam) {
  const GridSpec& g = w.fn.grid;
  const Weight sigma = dual_weight(w, p);
  const double fws = fujii_wilson(sigma, fam).value;
  const double eps = (p - 1.0) / (pow2(g.dim + 1) * (fws - 1.0) + 1.0);
  const double q = p - eps;
  const double rhs = std::pow(2.0 * fws, p - 1.0) * a_p(w, p, fam).value;

  CheckResult r;
  if (q <= 1.0 + 1e-9) {
    // Nearly constant weight: eps -> p-1. a_1 dominates every a_q, so the
    // check stays conclusive at the endpoint.
    const SupResult lhs = a_1(w, fam);
    r = make_check("left_open", lhs.value, rhs, 0.0, lhs.witness);
    r.params["degenerate"] = 1.0;
  } else {
    const SupResult lhs = a_p(w, q, fam);
    r = make_check("left_open", lhs.value, rhs, 0.0, lhs.witness);
  }
  r.params["p"] = p;
  r.params["eps"] = eps;
  r.params["p_minus_eps"] = q;
  r.params["sigma_fujii_wilson"] = fws;
  return r;
}

CheckResult check_doubling_bound(const Weight& w, const CubeFamily& fam,
                                 DoubleMode mode, double kappa) {
  const GridSpec& g = w.fn.grid;
  const SupResult dw = doubling(w, fam, mode);  // NoAdmissibleCube propagates
  const double fw = fujii_wilson(w, fam).value;
  const double power = 1.0 + pow2(g.dim + 1) * (fw - 1.0);
  const double base = std::pow(4.0 * fw, power);
  const double rhs = std::exp(kappa * g.dim * base);
  CheckResult r = make_check("doubling", dw.value, rhs, 0.0, dw.witness);
  r.params["fujii_wilson"] = fw;
  r.params["kappa"] = kappa;
  r.params["implied_kappa"] = std::log(dw.value) / (g.dim * base);
  r.params["observed"] = dw.value;
  return r;
}

std::array<CheckResult, 3> check_bmo_chain(const Weight& w, const CubeFamily& fam) {
  const GridSpec& g = w.fn.grid;
  const GridFn lw = log_fn(w);
  const CubeFamily dy = CubeFamily::dyadic();
  const bool caller_dyadic = fam == dy;

  const SupResult osc = bmo_w(lw, w, fam);
  const SupResult la = log_ainfty(w, fam);
  CheckResult i = make_check("bmo_chain_i", osc.value, 8.0 * (la.value - 1.0),
                             kGuaranteedTol, osc.witness);
  i.params["log_ainfty"] = la.value;

  const SupResult la_d = caller_dyadic ? la : log_ainfty(w, dy);
  const double fw_d = fujii_wilson(w, dy).value;
  CheckResult ii = make_check("bmo_chain_ii", la_d.value - 1.0,
                              pow2(g.dim) * (fw_d - 1.0), kGuaranteedTol,
                              la_d.witness);
  ii.params["fujii_wilson_dyadic"] = fw_d;

  const SupResult osc_d = caller_dyadic ? osc : bmo_w(lw, w, dy);
  CheckResult iii = make_check("bmo_chain_iii", osc_d.value,
                               pow2(g.dim + 3) * (fw_d - 1.0), kGuaranteedTol,
                               osc_d.witness);
  iii.params["fujii_wilson_dyadic"] = fw_d;
  return {std::move(i), std::move(ii), std::move(iii)};
}

CheckResult check_tsutsui(const GridFn& f, const Weight& w, const CubeFamily& fam,
                          std::optional<double> budget) {
  const SupResult b = bmo(f, fam);
  const SupResult bw = bmo_w(f, w, fam);
  const double h = hruscev(w, fam).value;
  const double scale = std::log(2.0 * h) * bw.value;
  CheckResult r = make_check("tsutsui", b.value, budget.value_or(1.0) * scale,
                             0.0, b.witness);
  r.params["implied_cn"] = scale > 0.0 ? b.value / scale : 0.0;
  r.params["hruscev"] = h;
  if (budget) {
    r.params["budget"] = *budget;
  } else {
    r.pass = true;  // record-only
    r.ratio = r.params["implied_cn"];
  }
  return r;
}

EmbeddingResult embedding_via_jn(const Weight& w, const CubeFamily& fam) {
  const SupResult rstar = jn_sup_r(w, fam, 3.0);
  EmbeddingResult out;
  if (!std::isfinite(rstar.value) || rstar.value <= 0.0) {
    // Constant weight (or oscillation below the bracket floor): p = 1 and
    // there is nothing to bound.
    out.p = 1.0;
    out.check = make_check("embed_jn", 1.0, 1.0, kGuaranteedTol, full_cube(w.fn.grid));
    out.check.params["degenerate"] = 1.0;
    out.check.params["jn_r_star"] = rstar.value;
    return out;
  }
  const double pm1 = 1.0 / rstar.value;
  out.p = 1.0 + pm1;
  const SupResult apv = a_p_from_log(log_fn(w), out.p, fam);
  const double bound = std::pow(9.0, pm1);  // 3^(2(p-1))
  out.check = make_check("embed_jn", apv.value, bound, kGuaranteedTol, apv.witness);
  out.check.params["jn_r_star"] = rstar.value;
  out.check.params["p"] = out.p;
  return out;
}

CheckResult check_embedding(const Weight& w, double tau, double tau_prime,
                            const CubeFamily& fam) {
  if (!(tau > 0.0) || !(tau_prime > 0.0))
    throw InvalidConstant("embedding needs tau, tau' > 0");
  const double fw = fujii_wilson(w, fam).value;
  CheckResult r;
  if (fw <= 1.0) {
    r = make_check("embed_thm11", 1.0, 1.0, 0.0, full_cube(w.fn.grid));
    r.params["degenerate"] = 1.0;
  } else {
    const double p = 1.0 + tau * (fw - 1.0);
    const SupResult apv = a_p_from_log(log_fn(w), p, fam);
    r = make_check("embed_thm11", apv.value, std::exp(tau_prime * (fw - 1.0)),
                   0.0, apv.witness);
    r.params["p"] = p;
  }
  r.params["fujii_wilson"] = fw;
  r.params["tau"] = tau;
  r.params["tau_prime"] = tau_prime;
  return r;
}

PiecewiseEmbedding embedding_piecewise(double fw, double c_n, double C_n,
                                       double tau, double tau_prime) {
  if (!(fw >= 1.0)) throw InvalidConstant("piecewise embedding needs fw >= 1");
  if (!(c_n > 0.0) || !(C_n > 0.0) || !(tau > 0.0) || !(tau_prime > 0.0))
    throw InvalidConstant("piecewise embedding needs positive constants");
  PiecewiseEmbedding e;
  e.small_branch = fw <= 1.0 + c_n;
  if (e.small_branch) {
    e.p = 1.0 + tau * (fw - 1.0);
    e.bound = std::exp(tau_prime * (fw - 1.0));
  } else {
    e.p = std::exp(C_n * fw);
    e.bound = std::exp(e.p);
  }
  return e;
}

CheckResult check_bmo_vs_bmow(const GridFn& f, const Weight& w, double C,
                              const CubeFamily& fam) {
  if (!(C > 0.0)) throw InvalidConstant("bmo comparison needs C > 0");
  const SupResult b = bmo(f, fam);
  const SupResult bw = bmo_w(f, w, fam);
  CheckResult r = make_check("bmo_vs_bmow", b.value, C * bw.value, 0.0, b.witness);
  r.params["C"] = C;
  r.params["implied_C"] = bw.value > 0.0 ? b.value / bw.value : 0.0;
  return r;
}

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids{
      "rhi",       "subset",      "left_open",       "doubling",
      "bmo_chain", "tsutsui",     "embed_jn",        "embed_thm11",
      "embed_piecewise",          "bmo_vs_bmow"};
  return ids;
}

std::vector<CheckResult> run_checks(const Weight& w,
                                    const std::vector<std::string>& ids,
                                    const CubeFamily& fam,
                                    const CheckOptions& opts) {
  const GridSpec& g = w.fn.grid;
  // Reproducibility defaults, not claims: tau matches the Sobolev module's
  // exponent choice, tau' the rate the jn embedding certifies at p-1 = 1/r.
  const double tau = opts.tau > 0.0 ? opts.tau : pow2(g.dim + 1);
  const double tau_prime =
      opts.tau_prime > 0.0 ? opts.tau_prime : 2.0 * std::log(3.0) * tau;

  std::vector<CheckResult> out;
  for (const std::string& id : ids) {
    if (id == "rhi") {
      const double eps =
          opts.eps ? *opts.eps
                   : rhi_eps_limit(fujii_wilson(w, fam).value, g.dim);
      out.push_back(check_rhi(w, std::isfinite(eps) ? eps : 1.0, fam));
    } else if (id == "subset") {
      const Cube q = full_cube(g);
      const std::int64_t half = std::max<std::int64_t>(1, g.cell_count() / 2);
      std::vector<std::int64_t> cells(static_cast<std::size_t>(half));
      for (std::int64_t i = 0; i < half; ++i) cells[static_cast<std::size_t>(i)] = i;
      out.push_back(check_subset(w, q, cells, fam));
    } else if (id == "left_open") {
      for (double p : opts.ps) out.push_back(check_left_open(w, p, fam));
    } else if (id == "doubling") {
      out.push_back(check_doubling_bound(w, fam, opts.mode, opts.kappa));
    } else if (id == "bmo_chain") {
      for (CheckResult& c : check_bmo_chain(w, fam)) out.push_back(std::move(c));
    } else if (id == "tsutsui") {
      out.push_back(check_tsutsui(log_fn(w), w, fam, opts.tsutsui_budget));
    } else if (id == "embed_jn") {
      out.push_back(embedding_via_jn(w, fam).check);
    } else if (id == "embed_thm11") {
      out.push_back(check_embedding(w, tau, tau_prime, fam));
    } else if (id == "embed_piecewise") {
      const double fw = fujii_wilson(w, fam).value;
      const PiecewiseEmbedding e =
          embedding_piecewise(fw, opts.c_n, opts.big_cn, tau, tau_prime);
      CheckResult r = make_check("embed_piecewise", 0.0, 1.0, 0.0, full_cube(g));
      r.params["fujii_wilson"] = fw;
      r.params["p"] = e.p;
      r.params["bound"] = e.bound;
      r.params["small_branch"] = e.small_branch ? 1.0 : 0.0;
      out.push_back(std::move(r));
    } else if (id == "bmo_vs_bmow") {
      out.push_back(check_bmo_vs_bmow(log_fn(w), w, opts.bmo_factor, fam));
    } else {
      throw Error("unknown check id: " + id);
    }
  }
  return out;
}

}  // namespace flatweights
