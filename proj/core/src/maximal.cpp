#include "flatweights/maximal.hpp"

#include <algorithm>
#include <limits>

namespace flatweights {

CheckResult make_check(std::string id, double lhs, double rhs, double tol,
                       std::optional<Cube> witness) {
  CheckResult r;
  r.id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tol = tol;
  if (rhs > 0.0)
    r.ratio = lhs / rhs;
  else
    r.ratio = lhs == 0.0 ? 0.0 : std::numeric_limits<double>::max();
  r.pass = r.ratio <= 1.0 + tol;
  r.witness = std::move(witness);
  return r;
}

LocalGridFn local_maximal(const Weight& w, const Cube& q, const CubeFamily& fam) {
  PrefixSums pw(w.fn.grid, w.fn.values);
  return local_maximal(w, pw, q, fam);
}

LocalGridFn local_maximal(const Weight& w, const PrefixSums& pw, const Cube& q,
                          const CubeFamily& fam) {
  const GridSpec& g = w.fn.grid;
  validate_cube(q, g);
  const Box qb = to_box(q, g);
  LocalGridFn m{g, q, {}};
  m.values.reserve(static_cast<std::size_t>(cube_cell_count(q, g)));
  for_each_cell(q, g, [&](std::int64_t i) {
    const auto c = cell_coords(i, g);
    double best = w.fn[i];  // the cell itself
    for_each_cube_containing(g, fam, c, [&](const Cube& r) {
      const Box overlap = box_intersect(to_box(r, g), qb, g);
      if (box_empty(overlap, g)) return;
      best = std::max(best, pw.box_mean(overlap, cube_cell_count(r, g)));
    });
    m.values.push_back(best);
  });
  return m;
}

double integrate(const LocalGridFn& f) {
  double sum = 0.0;
  for (double v : f.values) sum += v;
  return sum * f.grid.cell_volume();
}

CheckResult reverse_weak_11(const Weight& w, const Cube& q, double t,
                            const CubeFamily& fam) {
  const GridSpec& g = w.fn.grid;
  const double wq = average(w.fn, q);
  if (!(t > wq)) throw InvalidThreshold("reverse weak (1,1) needs t > avg(w, Q)");

  const LocalGridFn m = local_maximal(w, q, fam);
  double mass_above = 0.0;
  for_each_cell(q, g, [&](std::int64_t i) {
    if (w.fn[i] > t) mass_above += w.fn[i];
  });
  const double lhs = mass_above * g.cell_volume() / t;

  std::int64_t cells_above = 0;
  for (double v : m.values)
    if (v > t) ++cells_above;
  const double rhs = std::ldexp(1.0, g.dim) * cells_above * g.cell_volume();

  CheckResult r = make_check("reverse_weak_11", lhs, rhs, kGuaranteedTol, q);
  r.params["t"] = t;
  r.params["avg_w_q"] = wq;
  return r;
}

}  // namespace flatweights
