#include "flatweights/grid.hpp"

#include <algorithm>
#include <cmath>

namespace flatweights {

GridSpec make_grid(int dim, int level) {
  if (dim != 1 && dim != 2) throw Error("grid dim must be 1 or 2");
  if (level < 0) throw Error("grid level must be >= 0");
  if (dim * level > 26) throw Error("grid too large");
  return GridSpec{dim, level};
}

GridFn make_grid_fn(GridSpec grid, std::vector<double> values) {
  if (static_cast<std::int64_t>(values.size()) != grid.cell_count())
    throw SizeMismatch("grid fn size does not match cell count");
  for (double v : values)
    if (!std::isfinite(v)) throw NonFinite("grid fn value not finite");
  return GridFn{grid, std::move(values)};
}

Weight make_weight(GridSpec grid, std::vector<double> values) {
  GridFn fn = make_grid_fn(grid, std::move(values));
  for (double v : fn.values)
    if (v <= 0.0) throw NonPositiveValue("weight value not strictly positive");
  return Weight{std::move(fn)};
}

void validate_cube(const Cube& q, const GridSpec& g) {
  const int n = g.cells_per_side();
  if (q.side < 1) throw CubeOutOfBounds("cube side must be >= 1");
  for (int d = 0; d < g.dim; ++d)
    if (q.anchor[d] < 0 || q.anchor[d] + q.side > n)
      throw CubeOutOfBounds("cube exits the domain");
}

Cube full_cube(const GridSpec& g) { return Cube{{0, 0}, g.cells_per_side()}; }

double side_length(const Cube& q, const GridSpec& g) { return q.side * g.cell_width(); }

std::int64_t cube_cell_count(const Cube& q, const GridSpec& g) {
  std::int64_t s = q.side;
  return g.dim == 1 ? s : s * s;
}

Box to_box(const Cube& q, const GridSpec& g) {
  Box b;
  for (int d = 0; d < 2; ++d) {
    b.lo[d] = d < g.dim ? q.anchor[d] : 0;
    b.hi[d] = b.lo[d] + (d < g.dim ? q.side : 1);
  }
  return b;
}

std::int64_t box_cell_count(const Box& b, const GridSpec& g) {
  std::int64_t c = b.hi[0] - b.lo[0];
  if (c <= 0) return 0;
  if (g.dim == 2) {
    std::int64_t c1 = b.hi[1] - b.lo[1];
    c = c1 <= 0 ? 0 : c * c1;
  }
  return c;
}

bool box_is_cube(const Box& b, const GridSpec& g) {
  if (g.dim == 1) return b.hi[0] > b.lo[0];
  return b.hi[0] > b.lo[0] && b.hi[0] - b.lo[0] == b.hi[1] - b.lo[1];
}

Box box_intersect(const Box& a, const Box& b, const GridSpec& g) {
  Box r;
  for (int d = 0; d < g.dim; ++d) {
    r.lo[d] = std::max(a.lo[d], b.lo[d]);
    r.hi[d] = std::min(a.hi[d], b.hi[d]);
    if (r.hi[d] < r.lo[d]) r.hi[d] = r.lo[d];
  }
  if (g.dim == 1) r.lo[1] = 0, r.hi[1] = 1;
  return r;
}

bool box_empty(const Box& b, const GridSpec& g) { return box_cell_count(b, g) == 0; }

std::array<int, 2> cell_coords(std::int64_t flat, const GridSpec& g) {
  if (g.dim == 1) return {static_cast<int>(flat), 0};
  const std::int64_t n = g.cells_per_side();
  return {static_cast<int>(flat / n), static_cast<int>(flat % n)};
}

std::array<double, 2> cell_center(std::int64_t flat, const GridSpec& g) {
  const auto c = cell_coords(flat, g);
  const double h = g.cell_width();
  return {(c[0] + 0.5) * h, g.dim == 2 ? (c[1] + 0.5) * h : 0.0};
}

CubeFamily CubeFamily::aligned(int a, int b) {
  if (a < 1 || b < 1) throw Error("aligned strides must be >= 1");
  return CubeFamily{Kind::Aligned, a, b};
}

CubeFamily CubeFamily::aligned_default(int level) {
  const int stride = level <= 8 ? 1 : 1 << (level - 8);
  return aligned(stride, stride);
}

std::vector<int> family_sides(const GridSpec& g, const CubeFamily& fam) {
  const int n = g.cells_per_side();
  std::vector<int> sides;
  if (fam.kind == CubeFamily::Kind::Dyadic) {
    for (int s = n; s >= 1; s /= 2) sides.push_back(s);
    return sides;
  }
  for (int s = 1; s < n; s += fam.side_stride) sides.push_back(s);
  sides.push_back(n);
  std::sort(sides.begin(), sides.end(), std::greater<int>());
  sides.erase(std::unique(sides.begin(), sides.end()), sides.end());
  return sides;
}

std::vector<Cube> enumerate_cubes(const GridSpec& g, const CubeFamily& fam) {
  std::vector<Cube> out;
  for_each_cube(g, fam, [&](const Cube& q) { out.push_back(q); });
  return out;
}

double average(const GridFn& f, const Cube& q) {
  validate_cube(q, f.grid);
  double sum = 0.0;
  for_each_cell(q, f.grid, [&](std::int64_t i) { sum += f[i]; });
  return sum / static_cast<double>(cube_cell_count(q, f.grid));
}

double weighted_measure(const Weight& w, const Cube& q) {
  return weighted_measure(w, to_box(q, w.fn.grid));
}

double weighted_measure(const Weight& w, const Box& b) {
  double sum = 0.0;
  for_each_cell(b, w.fn.grid, [&](std::int64_t i) { sum += w.fn[i]; });
  return sum * w.fn.grid.cell_volume();
}

double weighted_average(const GridFn& f, const Weight& w, const Cube& q) {
  if (!(f.grid == w.fn.grid)) throw SizeMismatch("function and weight grids differ");
  validate_cube(q, f.grid);
  double num = 0.0, den = 0.0;
  for_each_cell(q, f.grid, [&](std::int64_t i) {
    num += f[i] * w.fn[i];
    den += w.fn[i];
  });
  return num / den;
}

Weight dual_weight(const Weight& w, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw Error("dual weight requires 1 < p < inf");
  const double e = -1.0 / (p - 1.0);  // 1 - p'
  std::vector<double> vals(w.fn.values.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    vals[i] = std::pow(w.fn.values[i], e);
    if (!std::isfinite(vals[i]) || vals[i] <= 0.0)
      throw ExponentOverflow("dual weight exponent overflows value range");
  }
  return Weight{GridFn{w.fn.grid, std::move(vals)}};
}

std::optional<Box> double_cube(const Cube& q, const GridSpec& g, DoubleMode mode) {
  validate_cube(q, g);
  const int n = g.cells_per_side();
  const int s = q.side;
  Box b;
  for (int d = 0; d < g.dim; ++d) {
    b.lo[d] = q.anchor[d] - (s + 1) / 2;  // floor(anchor - s/2)
    b.hi[d] = b.lo[d] + 2 * s;
  }
  if (g.dim == 1) b.lo[1] = 0, b.hi[1] = 1;
  if (mode == DoubleMode::RequireInside) {
    for (int d = 0; d < g.dim; ++d)
      if (b.lo[d] < 0 || b.hi[d] > n) return std::nullopt;
    return b;
  }
  for (int d = 0; d < g.dim; ++d) {
    b.lo[d] = std::max(b.lo[d], 0);
    b.hi[d] = std::min(b.hi[d], n);
  }
  return b;
}

PrefixSums::PrefixSums(const GridSpec& g, const std::vector<double>& cells) : grid_(g) {
  if (static_cast<std::int64_t>(cells.size()) != g.cell_count())
    throw SizeMismatch("prefix sums size mismatch");
  const std::int64_t n = g.cells_per_side();
  using detail::dd;
  using detail::dd_add;
  if (g.dim == 1) {
    t_.resize(n + 1);
    for (std::int64_t i = 0; i < n; ++i)
      t_[i + 1] = dd_add(t_[i], dd{cells[static_cast<std::size_t>(i)], 0.0});
    return;
  }
  t_.assign((n + 1) * (n + 1), dd{});
  for (std::int64_t i = 1; i <= n; ++i) {
    dd row{};  // running sum of row i-1, avoids the subtractive recurrence
    for (std::int64_t j = 1; j <= n; ++j) {
      row = dd_add(row, dd{cells[static_cast<std::size_t>((i - 1) * n + (j - 1))], 0.0});
      t_[i * (n + 1) + j] = dd_add(t_[(i - 1) * (n + 1) + j], row);
    }
  }
}

detail::dd PrefixSums::at(int i, int j) const {
  const std::int64_t n = grid_.cells_per_side();
  return grid_.dim == 1 ? t_[i] : t_[i * (n + 1) + j];
}

detail::dd PrefixSums::box_dd(const Box& b) const {
  using detail::dd;
  using detail::dd_add;
  using detail::dd_neg;
  if (box_cell_count(b, grid_) == 0) return dd{};
  if (grid_.dim == 1) return dd_add(at(b.hi[0], 0), dd_neg(at(b.lo[0], 0)));
  dd pos = dd_add(at(b.hi[0], b.hi[1]), at(b.lo[0], b.lo[1]));
  dd neg = dd_add(at(b.lo[0], b.hi[1]), at(b.hi[0], b.lo[1]));
  return dd_add(pos, dd_neg(neg));
}

double PrefixSums::box_sum(const Box& b) const { return box_dd(b).hi; }

double PrefixSums::cube_sum(const Cube& q) const { return box_sum(to_box(q, grid_)); }

double PrefixSums::box_mean(const Box& b, std::int64_t denom) const {
  return detail::dd_div(box_dd(b), static_cast<double>(denom));
}

double PrefixSums::box_average(const Box& b) const {
  return box_mean(b, box_cell_count(b, grid_));
}

double PrefixSums::cube_average(const Cube& q) const {
  const Box b = to_box(q, grid_);
  return box_mean(b, box_cell_count(b, grid_));
}

}  // namespace flatweights
