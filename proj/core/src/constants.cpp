#include "flatweights/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "flatweights/maximal.hpp"
#include "scan.hpp"

namespace flatweights {

using detail::sup_scan;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

GridFn log_fn(const Weight& w) {
  std::vector<double> g(w.fn.values.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::log(w.fn.values[i]);
  return make_grid_fn(w.fn.grid, std::move(g));
}

SupResult a_p(const Weight& w, double p, const CubeFamily& fam) {
  const Weight sigma = dual_weight(w, p);
  const PrefixSums pw(w.fn.grid, w.fn.values);
  const PrefixSums ps(w.fn.grid, sigma.fn.values);
  return sup_scan(w.fn.grid, fam, [&](const Cube& q) {
    return pw.cube_average(q) * std::pow(ps.cube_average(q), p - 1.0);
  });
}

SupResult a_p_from_log(const GridFn& log_w, double p, const CubeFamily& fam) {
  if (!(p > 1.0)) throw Error("a_p needs p > 1");
  const GridSpec& g = log_w.grid;
  const PrefixSums pg(g, log_w.values);
  const double e = -1.0 / (p - 1.0);
  return sup_scan(g, fam, [&](const Cube& q) {
    const double c = pg.cube_average(q);
    double sw = 0.0, ss = 0.0;
    for_each_cell(q, g, [&](std::int64_t i) {
      const double t = log_w[i] - c;
      sw += std::exp(t);
      ss += std::exp(e * t);
    });
    const double m = static_cast<double>(cube_cell_count(q, g));
    return (sw / m) * std::pow(ss / m, p - 1.0);
  });
}

SupResult a_1(const Weight& w, const CubeFamily& fam) {
  const GridSpec& g = w.fn.grid;
  const PrefixSums pw(g, w.fn.values);
  return sup_scan(g, fam, [&](const Cube& q) {
    double lo = kInf;
    for_each_cell(q, g, [&](std::int64_t i) { lo = std::min(lo, w.fn[i]); });
    return pw.cube_average(q) / lo;
  });
}

SupResult fujii_wilson(const Weight& w, const CubeFamily& fam) {
  const GridSpec& g = w.fn.grid;
  const PrefixSums pw(g, w.fn.values);
  return sup_scan(g, fam, [&](const Cube& q) {
    const LocalGridFn m = local_maximal(w, pw, q, fam);
    // Same-order sums: M >= w cellwise makes the quotient >= 1 in floating
    // point too, and equal cells give exactly 1.
    double sm = 0.0, sw = 0.0;
    std::size_t k = 0;
    for_each_cell(q, g, [&](std::int64_t i) {
      sm += m.values[k++];
      sw += w.fn[i];
    });
    return sm / sw;
  });
}

SupResult hruscev(const Weight& w, const CubeFamily& fam) {
  const GridSpec& g = w.fn.grid;
  const GridFn lw = log_fn(w);
  const PrefixSums pw(g, w.fn.values);
  const PrefixSums pl(g, lw.values);
  return sup_scan(g, fam, [&](const Cube& q) {
    return pw.cube_average(q) * std::exp(-pl.cube_average(q));
  });
}

SupResult log_ainfty(const Weight& w, const CubeFamily& fam) {
  const GridSpec& g = w.fn.grid;
  const PrefixSums pw(g, w.fn.values);
  return sup_scan(g, fam, [&](const Cube& q) {
    const double wq = pw.cube_average(q);
    double s = 0.0, sw = 0.0;
    for_each_cell(q, g, [&](std::int64_t i) {
      const double v = w.fn[i];
      const double ratio = v / wq;
      s += ratio > 1.0 ? (1.0 + std::log(ratio)) * v : v;
      sw += v;
    });
    return s / sw;  // same-order sums: equal cells give exactly 1
  });
}

SupResult bmo(const GridFn& f, const CubeFamily& fam) {
  const GridSpec& g = f.grid;
  const PrefixSums pf(g, f.values);
  return sup_scan(g, fam, [&](const Cube& q) {
    const double c = pf.cube_average(q);
    double s = 0.0;
    for_each_cell(q, g, [&](std::int64_t i) { s += std::abs(f[i] - c); });
    return s / static_cast<double>(cube_cell_count(q, g));
  });
}

SupResult bmo_w(const GridFn& f, const Weight& w, const CubeFamily& fam) {
  if (!(f.grid == w.fn.grid)) throw SizeMismatch("bmo_w: f and w on different grids");
  const GridSpec& g = f.grid;
  std::vector<double> fw(f.values.size());
  for (std::size_t i = 0; i < fw.size(); ++i) fw[i] = f.values[i] * w.fn.values[i];
  const PrefixSums pw(g, w.fn.values);
  const PrefixSums pfw(g, fw);
  return sup_scan(g, fam, [&](const Cube& q) {
    const double wq = pw.cube_sum(q);
    const double c = pfw.cube_sum(q) / wq;
    double s = 0.0;
    for_each_cell(q, g, [&](std::int64_t i) { s += std::abs(f[i] - c) * w.fn[i]; });
    return s / wq;
  });
}

SupResult doubling(const Weight& w, const CubeFamily& fam, DoubleMode mode) {
  const GridSpec& g = w.fn.grid;
  const PrefixSums pw(g, w.fn.values);
  const std::vector<Cube> cubes = enumerate_cubes(g, fam);
  SupResult r{-kInf, cubes.front()};
  bool any = false;
  for (const Cube& q : cubes) {
    const std::optional<Box> dq = double_cube(q, g, mode);
    if (!dq) continue;
    any = true;
    const double ratio = pw.box_sum(*dq) / pw.cube_sum(q);
    if (ratio > r.value) {
      r.value = ratio;
      r.witness = q;
    }
  }
  if (!any) throw NoAdmissibleCube("doubling: every 2Q exits the domain");
  return r;
}

double exp_luxemburg(const GridFn& f, const Cube& q, const Weight& w) {
  if (!(f.grid == w.fn.grid)) throw SizeMismatch("exp_luxemburg: f and w on different grids");
  const GridSpec& g = f.grid;
  validate_cube(q, g);

  double amax = 0.0, amin = kInf, wq = 0.0;
  for_each_cell(q, g, [&](std::int64_t i) {
    const double a = std::abs(f[i]);
    amax = std::max(amax, a);
    amin = std::min(amin, a);
    wq += w.fn[i];
  });
  if (amax == 0.0) return 0.0;
  if (amax == amin) return amax / std::numbers::ln2;  // closed form for constant |f|

  const auto admissible = [&](double lam) {
    double s = 0.0;
    for_each_cell(q, g, [&](std::int64_t i) { s += std::exp(std::abs(f[i]) / lam) * w.fn[i]; });
    return s <= 2.0 * wq;
  };
  double lo = 0.0, hi = amax / std::numbers::ln2;  // exp(|f|/hi) <= 2 cellwise, so hi works
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    (admissible(mid) ? hi : lo) = mid;
  }
  return hi;
}

SupResult jn_sup_r(const Weight& w, const CubeFamily& fam, double bound) {
  if (!(bound > 1.0)) throw InvalidConstant("jn_sup_r needs bound > 1");
  const GridSpec& g = w.fn.grid;
  const GridFn lw = log_fn(w);
  const auto [mn, mx] = std::minmax_element(lw.values.begin(), lw.values.end());
  if (*mn == *mx) return {kInf, full_cube(g)};

  const PrefixSums pl(g, lw.values);
  const std::vector<Cube> cubes = enumerate_cubes(g, fam);
  const auto cube_avg = [&](const Cube& q, double r) {
    const double c = pl.cube_average(q);
    double s = 0.0;
    for_each_cell(q, g, [&](std::int64_t i) { s += std::exp(r * std::abs(lw[i] - c)); });
    return s / static_cast<double>(cube_cell_count(q, g));
  };
  // Small cubes usually bind, so scan them first to fail fast.
  const auto feasible = [&](double r) {
    for (auto it = cubes.rbegin(); it != cubes.rend(); ++it)
      if (cube_avg(*it, r) > bound) return false;
    return true;
  };

  double lo = 1e-6, hi = 1e6;
  if (!feasible(lo)) return {0.0, full_cube(g)};
  if (feasible(hi)) return {kInf, full_cube(g)};
  while (hi - lo > 1e-8 * lo) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }

  SupResult r{lo, cubes.front()};
  double worst = -kInf;
  for (const Cube& q : cubes) {
    const double v = cube_avg(q, lo);
    if (v > worst) {
      worst = v;
      r.witness = q;
    }
  }
  return r;
}

ConstantsReport constants_report(const Weight& w, const std::vector<double>& ps,
                                 const CubeFamily& fam, DoubleMode mode) {
  ConstantsReport rep;
  rep.grid = w.fn.grid;
  rep.family = fam;
  rep.doubling_mode = mode;
  for (double p : ps) rep.a_p_values.emplace_back(p, a_p(w, p, fam));
  rep.a_1 = a_1(w, fam);
  rep.fujii_wilson = fujii_wilson(w, fam);
  rep.hruscev = hruscev(w, fam);
  rep.log_ainfty = log_ainfty(w, fam);
  const GridFn lw = log_fn(w);
  rep.bmo_log = bmo(lw, fam);
  rep.bmo_w_log = bmo_w(lw, w, fam);
  try {
    rep.doubling = doubling(w, fam, mode);
  } catch (const NoAdmissibleCube&) {
    rep.doubling = {std::numeric_limits<double>::quiet_NaN(), full_cube(w.fn.grid)};
    rep.doubling_defined = false;
  }
  rep.jn_r_star = jn_sup_r(w, fam);
  return rep;
}

}  // namespace flatweights
