#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "flatweights/errors.hpp"

// Piecewise-constant functions on a uniform 2^L grid over the half-open unit
// cube [0,1)^n, n in {1,2}. Cells are indexed lexicographically by integer
// coordinates (c0[, c1]); for n=2 the flat index is c0*N + c1 (row-major).

namespace flatweights {

struct GridSpec {
  int dim = 1;    // n, 1 or 2
  int level = 0;  // L >= 0; N = 2^L cells per side

  int cells_per_side() const { return 1 << level; }
  std::int64_t cell_count() const {
    std::int64_t n = cells_per_side();
    return dim == 1 ? n : n * n;
  }
  double cell_width() const { return std::ldexp(1.0, -level); }
  // h^n: exact power of two, so scaling sums by it is exact.
  double cell_volume() const { return std::ldexp(1.0, -level * dim); }
  bool operator==(const GridSpec&) const = default;
};

// Throws on dim outside {1,2}, level < 0, or a grid too large to index.
GridSpec make_grid(int dim, int level);

struct GridFn {
  GridSpec grid;
  std::vector<double> values;  // one per cell, lexicographic order

  double operator[](std::int64_t i) const { return values[static_cast<std::size_t>(i)]; }
};

// Validates size and finiteness.
GridFn make_grid_fn(GridSpec grid, std::vector<double> values);

// A weight is a grid function with strictly positive (finite) values.
struct Weight {
  GridFn fn;
};

Weight make_weight(GridSpec grid, std::vector<double> values);

// Axis-parallel cube of `side` cells anchored at integer cell coordinates.
// anchor[1] is ignored for n=1.
struct Cube {
  std::array<int, 2> anchor{0, 0};
  int side = 1;
  bool operator==(const Cube&) const = default;
};

void validate_cube(const Cube& q, const GridSpec& g);  // CubeOutOfBounds
Cube full_cube(const GridSpec& g);
double side_length(const Cube& q, const GridSpec& g);  // ell(Q) = side * h
std::int64_t cube_cell_count(const Cube& q, const GridSpec& g);

// Half-open per-axis cell ranges. Doubled-then-clipped cubes are boxes: in
// n=2 clipping against the domain can shorten one axis only.
struct Box {
  std::array<int, 2> lo{0, 0};
  std::array<int, 2> hi{0, 0};  // exclusive; hi[1] ignored for n=1
  bool operator==(const Box&) const = default;
};

Box to_box(const Cube& q, const GridSpec& g);
std::int64_t box_cell_count(const Box& b, const GridSpec& g);
bool box_is_cube(const Box& b, const GridSpec& g);
Box box_intersect(const Box& a, const Box& b, const GridSpec& g);  // may be empty
bool box_empty(const Box& b, const GridSpec& g);

// Visit the cells of a cube (or box) in lexicographic order.
template <class F>
void for_each_cell(const Box& b, const GridSpec& g, F&& f) {
  const std::int64_t n = g.cells_per_side();
  if (g.dim == 1) {
    for (int i = b.lo[0]; i < b.hi[0]; ++i) f(static_cast<std::int64_t>(i));
  } else {
    for (int i = b.lo[0]; i < b.hi[0]; ++i)
      for (int j = b.lo[1]; j < b.hi[1]; ++j) f(i * n + j);
  }
}

template <class F>
void for_each_cell(const Cube& q, const GridSpec& g, F&& f) {
  for_each_cell(to_box(q, g), g, std::forward<F>(f));
}

std::array<int, 2> cell_coords(std::int64_t flat, const GridSpec& g);
std::array<double, 2> cell_center(std::int64_t flat, const GridSpec& g);

// Cube families over which suprema are taken.
//   Dyadic: the full dyadic tree, 2^(n*l) cubes of side N/2^l for l = 0..L.
//   Aligned(a,b): sides {1, 1+b, 1+2b, ...} capped at N (N always included),
//   anchors on the stride-a sublattice. Aligned(1,1) is every aligned cube.
struct CubeFamily {
  enum class Kind { Dyadic, Aligned };
  Kind kind = Kind::Dyadic;
  int anchor_stride = 1;
  int side_stride = 1;

  static CubeFamily dyadic() { return {}; }
  static CubeFamily aligned(int a = 1, int b = 1);
  // Spec'd cost cap for aligned sweeps: stride 1 through L = 8, 2^(L-8) above.
  static CubeFamily aligned_default(int level);
  bool operator==(const CubeFamily&) const = default;
};

// Sides in descending order.
std::vector<int> family_sides(const GridSpec& g, const CubeFamily& fam);

// Enumeration order is deterministic: side descending, then anchor
// lexicographic. Witness reporting relies on this order for tie-breaks.
template <class F>
void for_each_cube(const GridSpec& g, const CubeFamily& fam, F&& f) {
  const int n = g.cells_per_side();
  const int a = fam.kind == CubeFamily::Kind::Dyadic ? 0 : fam.anchor_stride;
  for (int s : family_sides(g, fam)) {
    const int step = fam.kind == CubeFamily::Kind::Dyadic ? s : a;
    const int last = n - s;
    if (g.dim == 1) {
      for (int i = 0; i <= last; i += step) f(Cube{{i, 0}, s});
    } else {
      for (int i = 0; i <= last; i += step)
        for (int j = 0; j <= last; j += step) f(Cube{{i, j}, s});
    }
  }
}

std::vector<Cube> enumerate_cubes(const GridSpec& g, const CubeFamily& fam);

// Visit every family cube R containing the given cell; the single cell is
// always visited as a candidate even when the strides exclude it.
template <class F>
void for_each_cube_containing(const GridSpec& g, const CubeFamily& fam,
                              std::array<int, 2> cell, F&& f) {
  const int n = g.cells_per_side();
  if (fam.kind == CubeFamily::Kind::Dyadic) {
    for (int lev = 0; lev <= g.level; ++lev) {
      const int shift = g.level - lev;
      Cube r{{(cell[0] >> shift) << shift, (cell[1] >> shift) << shift}, n >> lev};
      f(r);
    }
    return;
  }
  const int a = fam.anchor_stride;
  bool cell_seen = false;
  for (int s : family_sides(g, fam)) {
    // anchors u with u <= cell < u+s, 0 <= u <= n-s, u on the stride lattice
    const auto lo = [&](int c) {
      int m = c - s + 1;
      if (m < 0) m = 0;
      return ((m + a - 1) / a) * a;
    };
    const auto hi = [&](int c) { return std::min(c, n - s); };
    if (g.dim == 1) {
      for (int u = lo(cell[0]); u <= hi(cell[0]); u += a) {
        if (s == 1) cell_seen = true;
        f(Cube{{u, 0}, s});
      }
    } else {
      for (int u = lo(cell[0]); u <= hi(cell[0]); u += a)
        for (int v = lo(cell[1]); v <= hi(cell[1]); v += a) {
          if (s == 1) cell_seen = true;
          f(Cube{{u, v}, s});
        }
    }
  }
  if (!cell_seen) f(Cube{{cell[0], cell[1]}, 1});
}

// --- averages -------------------------------------------------------------

// (1/|Q|) \int_Q f: the plain mean of cell values. Exact for f == c only up
// to one rounding of the sum; average(f, Q) == weighted_average(f, 1, Q)
// bitwise because both are sum/count with the same summation order.
double average(const GridFn& f, const Cube& q);

// w(Q) = \int_Q w dx = (sum of cells) * h^n.
double weighted_measure(const Weight& w, const Cube& q);
double weighted_measure(const Weight& w, const Box& b);

// f_{Q,w} = (1/w(Q)) \int_Q f w dx.
double weighted_average(const GridFn& f, const Weight& w, const Cube& q);

// sigma = w^(1-p'), the A_p dual weight; requires 1 < p < inf.
// Throws ExponentOverflow if any cell over/underflows to non-finite or 0.
Weight dual_weight(const Weight& w, double p);

// --- doubling -------------------------------------------------------------

enum class DoubleMode { Clip, RequireInside };

// Concentric double: side exactly 2s, anchor floor(alpha - s/2) per axis
// (the exact concentric double when s is even). Clip intersects with the
// domain; RequireInside yields nullopt when the double exits the domain.
std::optional<Box> double_cube(const Cube& q, const GridSpec& g, DoubleMode mode);

// --- compensated prefix sums ----------------------------------------------

namespace detail {
// Double-double accumulator: keeps box sums accurate to ~1e-15 relative even
// when a small box is carved out of a large prefix.
struct dd {
  double hi = 0.0, lo = 0.0;
};
inline dd two_sum(double x, double y) {
  double s = x + y;
  double b = s - x;
  return {s, (x - (s - b)) + (y - b)};
}
inline dd dd_add(dd x, dd y) {
  dd s = two_sum(x.hi, y.hi);
  dd t = two_sum(x.lo, y.lo);
  double lo = s.lo + t.hi;
  dd r = two_sum(s.hi, lo);
  r.lo += t.lo;
  dd q = two_sum(r.hi, r.lo);
  return q;
}
inline dd dd_neg(dd x) { return {-x.hi, -x.lo}; }
// Quotient of a dd by a positive integer-valued double. The fma makes the
// division remainder exact, so the mean of k equal cells is that value
// bitwise; this is what makes "constant weight => constant 1 exactly" hold.
inline double dd_div(dd x, double m) {
  const double q0 = x.hi / m;
  const double r = std::fma(-q0, m, x.hi) + x.lo;
  return q0 + r / m;
}
}  // namespace detail

// O(1) sums of cell values over boxes/cubes after O(N^n) construction.
class PrefixSums {
 public:
  PrefixSums(const GridSpec& g, const std::vector<double>& cells);

  double box_sum(const Box& b) const;  // sum of cell values (no h^n)
  double cube_sum(const Cube& q) const;
  // Box sum over an arbitrary denominator (the local maximal divides an
  // overlap sum by the covering cube's full cell count).
  double box_mean(const Box& b, std::int64_t denom) const;
  double box_average(const Box& b) const;
  double cube_average(const Cube& q) const;
  const GridSpec& grid() const { return grid_; }

 private:
  detail::dd at(int i, int j) const;
  detail::dd box_dd(const Box& b) const;
  GridSpec grid_;
  std::vector<detail::dd> t_;
};

}  // namespace flatweights
