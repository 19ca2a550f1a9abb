#include "flatweights/sobolev.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "flatweights/errors.hpp"
#include "flatweights/families.hpp"

using namespace flatweights;

namespace {

GridFn sampled(const GridSpec& g, double (*fn)(double, double)) {
  std::vector<double> v(static_cast<std::size_t>(g.cell_count()));
  for (std::int64_t i = 0; i < g.cell_count(); ++i) {
    const auto c = cell_center(i, g);
    v[static_cast<std::size_t>(i)] = fn(c[0], c[1]);
  }
  return make_grid_fn(g, std::move(v));
}

Weight uniform_weight(const GridSpec& g) {
  return make_weight(g, std::vector<double>(static_cast<std::size_t>(g.cell_count()), 1.0));
}

Weight flat_weight(int dim, int level, double delta) {
  WeightFamilySpec spec;
  spec.kind = WeightFamilySpec::Kind::Flat;
  spec.grid = make_grid(dim, level);
  spec.delta = delta;
  return generate(spec);
}

}  // namespace

TEST_CASE("gradient is exact on affine data") {
  const GridSpec g1 = make_grid(1, 2);
  const GridFn f1 = sampled(g1, [](double x, double) { return 0.25 + 1.5 * x; });
  const auto parts1 = gradient(f1);
  REQUIRE(parts1.size() == 1);
  for (double d : parts1[0].values) CHECK(d == 1.5);

  const GridSpec g2 = make_grid(2, 2);
  const GridFn f2 = sampled(g2, [](double x, double y) { return 2.0 * x - y; });
  const auto parts2 = gradient(f2);
  REQUIRE(parts2.size() == 2);
  for (double d : parts2[0].values) CHECK(d == 2.0);
  for (double d : parts2[1].values) CHECK(d == -1.0);

  const GridFn gm = gradient_magnitude(f2);
  for (double d : gm.values) CHECK(d == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));

  CHECK_THROWS_AS(gradient(sampled(make_grid(1, 0), [](double, double) { return 0.0; })),
                  Error);
}

TEST_CASE("riesz potential, hand values and guards") {
  const GridSpec g = make_grid(1, 1);
  const GridFn ones = make_grid_fn(g, {1.0, 1.0});
  CHECK_THROWS_AS(riesz(ones, 0.0, full_cube(g)), AlphaOutOfRange);
  CHECK_THROWS_AS(riesz(ones, 1.0, full_cube(g)), AlphaOutOfRange);

  // h = 1/2, alpha = 1/2: self-cell = 2 (h/2)^(1/2) / (1/2) = 2, and the
  // neighbor contributes (1/2)^(-1/2) * 1/2 = sqrt(1/2).
  const LocalGridFn r = riesz(ones, 0.5, full_cube(g));
  REQUIRE(r.values.size() == 2);
  CHECK(r.values[0] == doctest::Approx(2.0 + std::sqrt(0.5)).epsilon(1e-15));
  CHECK(r.values[1] == r.values[0]);

  // n = 2, alpha = 1, one-cell cube: only the self term, 2 sqrt(pi) h.
  const GridSpec g2 = make_grid(2, 3);
  const GridFn c2 = make_grid_fn(
      g2, std::vector<double>(static_cast<std::size_t>(g2.cell_count()), 3.0));
  const LocalGridFn r2 = riesz(c2, 1.0, Cube{{2, 5}, 1});
  REQUIRE(r2.values.size() == 1);
  CHECK(r2.values[0] ==
        doctest::Approx(3.0 * 2.0 * std::sqrt(std::numbers::pi) * g2.cell_width())
            .epsilon(1e-15));
  CHECK_THROWS_AS(riesz(c2, 2.0, full_cube(g2)), AlphaOutOfRange);
}

TEST_CASE("riesz of the constant function approaches the continuum profile") {
  // I_alpha 1 on [0,1] is (x^alpha + (1-x)^alpha)/alpha; midpoint quadrature
  // with the exact self-cell term should land within a percent mid-domain.
  const GridSpec g = make_grid(1, 8);
  const GridFn ones = make_grid_fn(
      g, std::vector<double>(static_cast<std::size_t>(g.cell_count()), 1.0));
  const double alpha = 0.5;
  const LocalGridFn r = riesz(ones, alpha, full_cube(g));
  const std::int64_t mid = g.cell_count() / 2;
  const double x = cell_center(mid, g)[0];
  const double exact = (std::pow(x, alpha) + std::pow(1.0 - x, alpha)) / alpha;
  CHECK(r.values[static_cast<std::size_t>(mid)] ==
        doctest::Approx(exact).epsilon(0.01));
}

TEST_CASE("normalized_measure and rearrangement") {
  const GridSpec g = make_grid(1, 2);
  const Weight w = make_weight(g, {1.0, 2.0, 3.0, 4.0});
  const NormalizedMeasure mu = normalized_measure(w, full_cube(g));
  REQUIRE(mu.mass.size() == 4);
  double total = 0.0;
  for (double m : mu.mass) total += m;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mu.mass[3] == doctest::Approx(0.4).epsilon(1e-15));

  const NormalizedMeasure uni = normalized_measure(uniform_weight(g), full_cube(g));
  const GridFn f = make_grid_fn(g, {3.0, -1.0, 2.0, 1.0});
  const auto steps = rearrangement(f, uni);
  REQUIRE(steps.size() == 3);  // |f| = 3,1,2,1 with the two 1s merged
  CHECK(steps[0].value == 3.0);
  CHECK(steps[0].mass == 0.25);
  CHECK(steps[1].value == 2.0);
  CHECK(steps[2].value == 1.0);
  CHECK(steps[2].mass == 0.5);

  CHECK_THROWS_AS(rearrangement(make_grid_fn(make_grid(1, 1), {1.0, 2.0}), uni),
                  SizeMismatch);
}

TEST_CASE("lorentz_norm closed forms on indicators") {
  const GridSpec g = make_grid(1, 2);
  const NormalizedMeasure uni = normalized_measure(uniform_weight(g), full_cube(g));
  const GridFn ind = make_grid_fn(g, {1.0, 0.0, 0.0, 0.0});  // mass 1/4

  const double q = 3.0, p = 2.0, m = 0.25;
  CHECK(lorentz_norm(ind, LorentzParams{q, p}, uni) ==
        doctest::Approx(std::pow(q / p, 1.0 / p) * std::pow(m, 1.0 / q)).epsilon(1e-10));
  CHECK(lorentz_norm(ind, LorentzParams::weak(q), uni) ==
        doctest::Approx(std::pow(m, 1.0 / q)).epsilon(1e-10));

  CHECK_THROWS_AS(lorentz_norm(ind, LorentzParams{0.0, 1.0}, uni), NonPositiveValue);
  CHECK_THROWS_AS(lorentz_norm(ind, LorentzParams{1.0, -2.0}, uni), NonPositiveValue);
}

TEST_CASE("lorentz_norm at equal exponents is the plain L^q norm") {
  const GridSpec g = make_grid(1, 3);
  const Weight w = flat_weight(1, 3, 0.3);
  const NormalizedMeasure mu = normalized_measure(w, full_cube(g));
  std::mt19937_64 rng(12);
  std::vector<double> v(8);
  for (double& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.3;
  const GridFn f = make_grid_fn(g, std::move(v));

  for (double q : {1.0, 2.0, 3.5}) {
    double direct = 0.0;
    std::size_t k = 0;
    for_each_cell(mu.cube, g, [&](std::int64_t i) {
      direct += std::pow(std::abs(f[i]), q) * mu.mass[k++];
    });
    direct = std::pow(direct, 1.0 / q);
    CHECK(lorentz_norm(f, LorentzParams{q, q}, mu) ==
          doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("lorentz scale is ordered in the inner exponent") {
  const GridSpec g = make_grid(2, 3);
  const Weight w = flat_weight(2, 3, 0.2);
  const NormalizedMeasure mu = normalized_measure(w, full_cube(g));
  std::mt19937_64 rng(13);
  std::vector<double> v(64);
  for (double& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const GridFn f = make_grid_fn(g, std::move(v));

  const double q = 2.5;
  const double weak = lorentz_norm(f, LorentzParams::weak(q), mu);
  const double inner1 = lorentz_norm(f, LorentzParams{q, 1.0}, mu);
  const double innerq = lorentz_norm(f, LorentzParams{q, q}, mu);
  CHECK(weak <= innerq * (1.0 + 1e-12));
  CHECK(innerq <= inner1 * (1.0 + 1e-12));
}

TEST_CASE("sobolev_exponent") {
  CHECK(sobolev_exponent(1.0, 1.0, 8.0, 2) == 2.0);
  CHECK(sobolev_exponent(1.0, 1.125, 8.0, 2) == 4.0 / 3.0);  // tau (fw-1) = 1
  CHECK(sobolev_exponent(1.5, 1.0, 8.0, 2) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK_THROWS_AS(sobolev_exponent(2.0, 1.0, 8.0, 2), Error);
  CHECK_THROWS_AS(sobolev_exponent(1.0, 0.9, 8.0, 2), InvalidConstant);
  CHECK_THROWS_AS(sobolev_exponent(1.0, 1.0, 0.0, 2), InvalidConstant);
}

TEST_CASE("refined_sobolev_exponent") {
  // Flat rate degenerates to the classical exponent when the dual constant
  // is 1; the inherited rate keeps a gap. p = 3/2, r = 3/2, n = 2:
  // classical gives 6, the inherited rate gives 69/22.
  CHECK(refined_sobolev_exponent(1.5, 1.5, 1.0, 2, RefineVariant::Flat) ==
        doctest::Approx(6.0).epsilon(1e-12));
  CHECK(refined_sobolev_exponent(1.5, 1.5, 1.0, 2, RefineVariant::Inherited) ==
        doctest::Approx(69.0 / 22.0).epsilon(1e-12));
  CHECK(refined_sobolev_exponent(1.5, 1.0, 1.0, 2, RefineVariant::Inherited) ==
        doctest::Approx(6.0).epsilon(1e-12));  // r = 1 collapses the rate to 1

  // Both variants move continuously off sigma_fw = 1 and stay above p.
  for (double s : {1.0, 1.01, 1.1}) {
    for (RefineVariant v : {RefineVariant::Inherited, RefineVariant::Flat}) {
      const double qv = refined_sobolev_exponent(1.2, 1.1, s, 2, v);
      CHECK(qv > 1.2);
      CHECK(std::isfinite(qv));
    }
  }

  CHECK_THROWS_AS(refined_sobolev_exponent(1.5, 1.6, 1.0, 2, RefineVariant::Flat), Error);
  CHECK_THROWS_AS(refined_sobolev_exponent(1.5, 1.5, 0.5, 2, RefineVariant::Flat),
                  InvalidConstant);
}

TEST_CASE("check_poincare_sobolev") {
  const GridSpec g = make_grid(2, 4);
  const Weight w = flat_weight(2, 4, 0.1);
  const GridFn fx = sampled(g, [](double x, double) { return x; });
  const Cube q = full_cube(g);

  CHECK_THROWS_AS(
      check_poincare_sobolev(sampled(make_grid(1, 3), [](double x, double) { return x; }),
                             flat_weight(1, 3, 0.1), 1.0, full_cube(make_grid(1, 3)), 8.0,
                             PoincareVariant::Strong),
      Error);
  CHECK_THROWS_AS(check_poincare_sobolev(fx, w, 2.5, q, 8.0, PoincareVariant::Strong),
                  Error);
  CHECK_THROWS_AS(check_poincare_sobolev(fx, flat_weight(2, 3, 0.1), 1.0, q, 8.0,
                                         PoincareVariant::Strong),
                  SizeMismatch);

  const CheckResult strong =
      check_poincare_sobolev(fx, w, 1.0, q, 8.0, PoincareVariant::Strong);
  CHECK(strong.pass);  // record-only
  CHECK(strong.params.at("degenerate") == 0.0);
  CHECK(strong.params.at("implied_cn") > 0.0);
  CHECK(strong.params.at("p_star") == 2.0);
  CHECK(strong.params.at("p_star_w") <= 2.0 + 1e-12);

  const CheckResult lorentz =
      check_poincare_sobolev(fx, w, 1.0, q, 8.0, PoincareVariant::Lorentz);
  CHECK(lorentz.params.at("lorentz") == 1.0);
  // Inner exponent p = 1 <= p*_w, so the Lorentz scale dominates the strong
  // norm at the same outer exponent.
  CHECK(lorentz.lhs >= strong.lhs * (1.0 - 1e-12));

  CHECK_FALSE(check_poincare_sobolev(fx, w, 1.0, q, 8.0, PoincareVariant::Strong, 1e-9).pass);

  const GridFn fc = sampled(g, [](double, double) { return 0.25; });
  const CheckResult deg =
      check_poincare_sobolev(fc, w, 1.0, q, 8.0, PoincareVariant::Strong, 1.0);
  CHECK(deg.pass);
  CHECK(deg.params.at("degenerate") == 1.0);
  CHECK(deg.lhs == 0.0);
  CHECK(deg.ratio == 0.0);
}

TEST_CASE("check_weak_riesz") {
  const GridSpec g = make_grid(2, 4);
  const Weight w = flat_weight(2, 4, 0.1);
  const GridFn f = sampled(g, [](double x, double y) { return 1.0 + x * y; });
  const Cube q = full_cube(g);
  const CubeFamily dy = CubeFamily::dyadic();

  CHECK_THROWS_AS(check_weak_riesz(f, w, 1.0, 2.5, 1.0, q, dy), AlphaOutOfRange);
  CHECK_THROWS_AS(check_weak_riesz(f, w, 1.0, 1.0, 1.5, q, dy), Error);   // r > p
  CHECK_THROWS_AS(check_weak_riesz(f, w, 2.5, 1.0, 1.0, q, dy), Error);   // p >= n/alpha

  const CheckResult r = check_weak_riesz(f, w, 1.0, 1.0, 1.0, q, dy);
  CHECK(r.pass);  // record-only
  CHECK(r.params.at("q_r") == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.params.at("p_star_alpha") == 2.0);
  CHECK(r.params.at("a_r") >= 1.0);
  CHECK(r.params.at("implied_cn") > 0.0);
  CHECK(std::isfinite(r.lhs));

  CHECK_FALSE(check_weak_riesz(f, w, 1.0, 1.0, 1.0, q, dy, 1e-9).pass);
  CHECK(check_weak_riesz(f, w, 1.0, 1.0, 1.0, q, dy, 1e9).pass);

  // r = 1.2 exercises the a_p branch.
  const CheckResult r2 = check_weak_riesz(f, w, 1.5, 0.5, 1.2, q, dy);
  CHECK(r2.params.at("a_r") >= 1.0);
  CHECK(std::isfinite(r2.params.at("implied_cn")));
}

TEST_CASE("check_subrepresentation") {
  const GridSpec g = make_grid(2, 3);
  const GridFn fx = sampled(g, [](double x, double y) { return x + 0.5 * y; });
  const Cube q = full_cube(g);

  CHECK_THROWS_AS(
      check_subrepresentation(sampled(make_grid(1, 3), [](double x, double) { return x; }),
                              full_cube(make_grid(1, 3))),
      Error);
  CHECK_THROWS_AS(check_subrepresentation(sampled(g, [](double, double) { return 1.0; }), q),
                  DegenerateFunction);

  const CheckResult r = check_subrepresentation(fx, q);
  CHECK(r.pass);  // record-only
  CHECK(r.params.at("excluded_cells") == 0.0);
  CHECK(r.params.at("implied_cn") > 0.0);
  CHECK(std::isfinite(r.params.at("implied_cn")));
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->side == 1);

  const double implied = r.params.at("implied_cn");
  CHECK_FALSE(check_subrepresentation(fx, q, implied * 0.5).pass);
  CHECK(check_subrepresentation(fx, q, implied * 2.0).pass);
}
