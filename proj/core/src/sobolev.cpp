#include "flatweights/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "flatweights/constants.hpp"
#include "flatweights/parallel.hpp"

namespace flatweights {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::pair<double, double> minmax_over(const GridFn& f, const Cube& q) {
  double lo = kInf, hi = -kInf;
  for_each_cell(q, f.grid, [&](std::int64_t i) {
    lo = std::min(lo, f[i]);
    hi = std::max(hi, f[i]);
  });
  return {lo, hi};
}

}  // namespace

std::vector<GridFn> gradient(const GridFn& f) {
  const GridSpec& g = f.grid;
  if (g.level < 1) throw Error("gradient needs at least two cells per side");
  const int n = g.cells_per_side();
  const double inv_h = std::ldexp(1.0, g.level);
  std::vector<GridFn> out;
  if (g.dim == 1) {
    std::vector<double> d(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const int a = i < n - 1 ? i : i - 1;
      d[static_cast<std::size_t>(i)] = (f[a + 1] - f[a]) * inv_h;
    }
    out.push_back(GridFn{g, std::move(d)});
    return out;
  }
  std::vector<double> d0(f.values.size()), d1(f.values.size());
  for (int i = 0; i < n; ++i) {
    const int ai = i < n - 1 ? i : i - 1;
    for (int j = 0; j < n; ++j) {
      const int aj = j < n - 1 ? j : j - 1;
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      d0[k] = (f[(ai + 1) * static_cast<std::int64_t>(n) + j] -
               f[ai * static_cast<std::int64_t>(n) + j]) *
              inv_h;
      d1[k] = (f[i * static_cast<std::int64_t>(n) + aj + 1] -
               f[i * static_cast<std::int64_t>(n) + aj]) *
              inv_h;
    }
  }
  out.push_back(GridFn{g, std::move(d0)});
  out.push_back(GridFn{g, std::move(d1)});
  return out;
}

GridFn gradient_magnitude(const GridFn& f) {
  auto parts = gradient(f);
  if (parts.size() == 1) {
    for (auto& v : parts[0].values) v = std::abs(v);
    return std::move(parts[0]);
  }
  GridFn out{f.grid, std::vector<double>(f.values.size())};
  for (std::size_t k = 0; k < out.values.size(); ++k)
    out.values[k] = std::hypot(parts[0].values[k], parts[1].values[k]);
  return out;
}

LocalGridFn riesz(const GridFn& f, double alpha, const Cube& q) {
  const GridSpec& g = f.grid;
  if (!(alpha > 0.0 && alpha < g.dim))
    throw AlphaOutOfRange("riesz order must lie in (0, n)");
  validate_cube(q, g);
  const double h = g.cell_width();
  const double hn = g.cell_volume();
  // Self-cell weight: exact kernel integral over the cell (n=1), or over the
  // area-equivalent disc of radius h/sqrt(pi) (n=2).
  const double self =
      g.dim == 1 ? 2.0 * std::pow(h / 2.0, alpha) / alpha
                 : 2.0 * std::pow(std::numbers::pi, 1.0 - alpha / 2.0) *
                       std::pow(h, alpha) / alpha;

  std::vector<std::int64_t> cells;
  std::vector<std::array<int, 2>> coords;
  cells.reserve(static_cast<std::size_t>(cube_cell_count(q, g)));
  for_each_cell(q, g, [&](std::int64_t i) {
    cells.push_back(i);
    coords.push_back(cell_coords(i, g));
  });

  const std::int64_t m = static_cast<std::int64_t>(cells.size());
  std::vector<double> out(cells.size());
  const double expo = alpha - g.dim;
  parallel_for(m, [&](std::int64_t a) {
    const auto xa = coords[static_cast<std::size_t>(a)];
    double s = 0.0;
    for (std::int64_t b = 0; b < m; ++b) {
      const double fv = f[cells[static_cast<std::size_t>(b)]];
      if (b == a) {
        s += fv * self;
        continue;
      }
      const auto yb = coords[static_cast<std::size_t>(b)];
      const double di = xa[0] - yb[0];
      const double dj = xa[1] - yb[1];
      const double dist = (g.dim == 1 ? std::abs(di) : std::hypot(di, dj)) * h;
      s += fv * std::pow(dist, expo) * hn;
    }
    out[static_cast<std::size_t>(a)] = s;
  });
  return LocalGridFn{g, q, std::move(out)};
}

NormalizedMeasure normalized_measure(const Weight& w, const Cube& q) {
  validate_cube(q, w.fn.grid);
  double total = 0.0;
  for_each_cell(q, w.fn.grid, [&](std::int64_t i) { total += w.fn[i]; });
  NormalizedMeasure mu{w.fn.grid, q, {}};
  mu.mass.reserve(static_cast<std::size_t>(cube_cell_count(q, w.fn.grid)));
  for_each_cell(q, w.fn.grid,
                [&](std::int64_t i) { mu.mass.push_back(w.fn[i] / total); });
  return mu;
}

namespace {

std::vector<RearrangementStep> steps_from_pairs(
    std::vector<std::pair<double, double>>& pairs) {
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<RearrangementStep> steps;
  for (const auto& [v, m] : pairs) {
    if (!steps.empty() && steps.back().value == v)
      steps.back().mass += m;
    else
      steps.push_back({v, m});
  }
  return steps;
}

}  // namespace

std::vector<RearrangementStep> rearrangement(const GridFn& f,
                                             const NormalizedMeasure& mu) {
  if (!(f.grid == mu.grid)) throw SizeMismatch("function and measure grids differ");
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(mu.mass.size());
  std::size_t k = 0;
  for_each_cell(mu.cube, mu.grid, [&](std::int64_t i) {
    pairs.emplace_back(std::abs(f[i]), mu.mass[k++]);
  });
  return steps_from_pairs(pairs);
}

std::vector<RearrangementStep> rearrangement(const LocalGridFn& f,
                                             const NormalizedMeasure& mu) {
  if (!(f.grid == mu.grid) || !(f.cube == mu.cube))
    throw SizeMismatch("local function and measure live on different cubes");
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(mu.mass.size());
  for (std::size_t k = 0; k < mu.mass.size(); ++k)
    pairs.emplace_back(std::abs(f.values[k]), mu.mass[k]);
  return steps_from_pairs(pairs);
}

LorentzParams LorentzParams::weak(double q) { return {q, kInf}; }

namespace {

double lorentz_from_steps(const std::vector<RearrangementStep>& steps,
                          const LorentzParams& lp) {
  if (!(lp.q > 0.0)) throw NonPositiveValue("lorentz outer exponent");
  if (!(lp.p > 0.0)) throw NonPositiveValue("lorentz inner exponent");
  if (std::isinf(lp.p)) {
    // sup of lambda mu(|f| > lambda)^(1/q): on each plateau the sup sits at
    // the left endpoint, i.e. at the step value against the cumulative mass.
    double best = 0.0, t = 0.0;
    for (const auto& s : steps) {
      t += s.mass;
      best = std::max(best, s.value * std::pow(t, 1.0 / lp.q));
    }
    return best;
  }
  // integral_0^1 (t^(1/q) f*)^p dt/t in closed form per step.
  const double e = lp.p / lp.q;
  double total = 0.0, t = 0.0, prev = 0.0;
  for (const auto& s : steps) {
    t += s.mass;
    const double cur = std::pow(t, e);
    if (s.value > 0.0) total += std::pow(s.value, lp.p) * (cur - prev) / e;
    prev = cur;
  }
  return std::pow(total, 1.0 / lp.p);
}

}  // namespace

double lorentz_norm(const GridFn& f, const LorentzParams& lp,
                    const NormalizedMeasure& mu) {
  return lorentz_from_steps(rearrangement(f, mu), lp);
}

double lorentz_norm(const LocalGridFn& f, const LorentzParams& lp,
                    const NormalizedMeasure& mu) {
  return lorentz_from_steps(rearrangement(f, mu), lp);
}

double sobolev_exponent(double p, double fw, double tau, int n) {
  if (!(p >= 1.0 && p < n)) throw Error("sobolev_exponent needs 1 <= p < n");
  if (!(fw >= 1.0)) throw InvalidConstant("fujii_wilson constant below 1");
  if (!(tau > 0.0)) throw InvalidConstant("tau must be positive");
  const double inv = 1.0 / p - (1.0 / n) / (1.0 + tau * (fw - 1.0));
  if (!(inv > 0.0)) throw ExponentBlowup("reciprocal exponent not positive");
  return 1.0 / inv;
}

double refined_sobolev_exponent(double p, double r, double sigma_fw, int n,
                                RefineVariant variant) {
  if (!(r >= 1.0 && r <= p && p < n))
    throw Error("refined_sobolev_exponent needs 1 <= r <= p < n");
  if (!(sigma_fw >= 1.0)) throw InvalidConstant("dual constant below 1");
  const double t = std::ldexp(1.0, n + 1);
  double rate;
  if (variant == RefineVariant::Inherited) {
    rate = t * sigma_fw / (1.0 + r * (t * sigma_fw - 1.0));
  } else {
    const double x = t * (sigma_fw - 1.0);
    rate = (1.0 + x) / (1.0 + r * x);
  }
  const double inv = 1.0 / p - rate / n;
  if (!(inv > 0.0)) throw ExponentBlowup("reciprocal exponent not positive");
  return 1.0 / inv;
}

CheckResult check_poincare_sobolev(const GridFn& f, const Weight& w, double p,
                                   const Cube& q, double tau,
                                   PoincareVariant variant,
                                   std::optional<double> budget) {
  const GridSpec& g = f.grid;
  if (!(w.fn.grid == g)) throw SizeMismatch("weight grid differs from f");
  if (g.dim < 2) throw Error("poincare_sobolev needs n >= 2");
  if (!(p >= 1.0 && p < g.dim)) throw Error("requires 1 <= p < n");
  validate_cube(q, g);

  const double fw = fujii_wilson(w, CubeFamily::dyadic()).value;
  const double pstar_w = sobolev_exponent(p, fw, tau, g.dim);
  const double pstar = g.dim * p / (g.dim - p);
  const double fq = average(f, q);

  double wsum = 0.0, gsum = 0.0;
  const GridFn gm = gradient_magnitude(f);
  for_each_cell(q, g, [&](std::int64_t i) {
    wsum += w.fn[i];
    gsum += std::pow(gm[i], p) * w.fn[i];
  });
  const double grad_mean = std::pow(gsum / wsum, 1.0 / p);
  const double rhs_base = pstar * std::pow(1.0 + tau * (fw - 1.0), 1.0 / p) *
                          side_length(q, g) * grad_mean;

  double lhs;
  if (variant == PoincareVariant::Strong) {
    double s = 0.0;
    for_each_cell(q, g, [&](std::int64_t i) {
      s += std::pow(std::abs(f[i] - fq), pstar_w) * w.fn[i];
    });
    lhs = std::pow(s / wsum, 1.0 / pstar_w);
  } else {
    const NormalizedMeasure mu = normalized_measure(w, q);
    LocalGridFn diff{g, q, {}};
    diff.values.reserve(mu.mass.size());
    for_each_cell(q, g, [&](std::int64_t i) { diff.values.push_back(f[i] - fq); });
    lhs = lorentz_norm(diff, LorentzParams{pstar_w, p}, mu);
  }

  const auto [lo, hi] = minmax_over(f, q);
  CheckResult res = make_check("poincare_sobolev", lhs,
                               budget.value_or(1.0) * rhs_base, 0.0, q);
  if (!budget) res.pass = true;
  res.params["p"] = p;
  res.params["p_star_w"] = pstar_w;
  res.params["p_star"] = pstar;
  res.params["fujii_wilson"] = fw;
  res.params["tau"] = tau;
  res.params["implied_cn"] = rhs_base > 0.0 ? lhs / rhs_base : 0.0;
  res.params["lorentz"] = variant == PoincareVariant::Lorentz ? 1.0 : 0.0;
  res.params["degenerate"] = lo == hi ? 1.0 : 0.0;
  return res;
}

CheckResult check_weak_riesz(const GridFn& f, const Weight& w, double p,
                             double alpha, double r, const Cube& q,
                             const CubeFamily& fam,
                             std::optional<double> budget) {
  const GridSpec& g = f.grid;
  if (!(w.fn.grid == g)) throw SizeMismatch("weight grid differs from f");
  if (!(alpha > 0.0 && alpha < g.dim))
    throw AlphaOutOfRange("riesz order must lie in (0, n)");
  if (!(r >= 1.0 && r <= p)) throw Error("requires 1 <= r <= p");
  if (!(p < g.dim / alpha)) throw Error("requires p < n / alpha");
  validate_cube(q, g);

  const double invq = 1.0 / p - (alpha / g.dim) / r;
  if (!(invq > 0.0)) throw ExponentBlowup("target exponent not positive");
  const double qr = 1.0 / invq;
  const double pstar_alpha = g.dim * p / (g.dim - alpha * p);
  const double ar = r == 1.0 ? a_1(w, fam).value : a_p(w, r, fam).value;

  const LocalGridFn If = riesz(f, alpha, q);
  const NormalizedMeasure mu = normalized_measure(w, q);
  const double lhs = lorentz_norm(If, LorentzParams::weak(qr), mu);

  double wsum = 0.0, fsum = 0.0;
  for_each_cell(q, g, [&](std::int64_t i) {
    wsum += w.fn[i];
    fsum += std::pow(std::abs(f[i]), p) * w.fn[i];
  });
  const double rhs_base = pstar_alpha / alpha * std::pow(ar, 1.0 / p) *
                          std::pow(side_length(q, g), alpha) *
                          std::pow(fsum / wsum, 1.0 / p);

  CheckResult res =
      make_check("weak_riesz", lhs, budget.value_or(1.0) * rhs_base, 0.0, q);
  if (!budget) res.pass = true;
  res.params["p"] = p;
  res.params["alpha"] = alpha;
  res.params["r"] = r;
  res.params["q_r"] = qr;
  res.params["p_star_alpha"] = pstar_alpha;
  res.params["a_r"] = ar;
  res.params["implied_cn"] = rhs_base > 0.0 ? lhs / rhs_base : 0.0;
  return res;
}

CheckResult check_subrepresentation(const GridFn& f, const Cube& q,
                                    std::optional<double> budget) {
  const GridSpec& g = f.grid;
  if (g.dim < 2) throw Error("subrepresentation needs n >= 2");
  validate_cube(q, g);
  const auto [lo, hi] = minmax_over(f, q);
  if (lo == hi) throw DegenerateFunction("f is constant on Q");

  const double fq = average(f, q);
  const LocalGridFn i1 = riesz(gradient_magnitude(f), 1.0, q);

  double best = 0.0;
  std::int64_t excluded = 0;
  std::optional<Cube> witness;
  std::size_t k = 0;
  for_each_cell(q, g, [&](std::int64_t i) {
    const double den = i1.values[k++];
    if (den == 0.0) {
      ++excluded;
      return;
    }
    const double ratio = std::abs(f[i] - fq) / den;
    if (ratio > best || !witness) {
      best = ratio;
      witness = Cube{cell_coords(i, g), 1};
    }
  });
  if (!witness) throw DegenerateFunction("denominator vanished on every cell");

  CheckResult res = make_check("subrepresentation", best, budget.value_or(1.0),
                               0.0, witness);
  if (!budget) res.pass = true;
  res.params["implied_cn"] = best;
  res.params["excluded_cells"] = static_cast<double>(excluded);
  return res;
}

}  // namespace flatweights
