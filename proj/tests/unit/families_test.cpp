#include "flatweights/families.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "flatweights/errors.hpp"

using namespace flatweights;

namespace {

WeightFamilySpec base(WeightFamilySpec::Kind kind, int dim, int level) {
  WeightFamilySpec s;
  s.kind = kind;
  s.grid = make_grid(dim, level);
  return s;
}

}  // namespace

TEST_CASE("flat family") {
  // delta = 0 is identically one, whatever the shape.
  for (FlatShape shape : {FlatShape::Sin, FlatShape::Bump, FlatShape::Saw}) {
    WeightFamilySpec s = base(WeightFamilySpec::Kind::Flat, 2, 2);
    s.shape = shape;
    for (double v : generate(s).fn.values) CHECK(v == 1.0);
  }

  // Sin at L=1 samples the extremes of the shape.
  WeightFamilySpec s = base(WeightFamilySpec::Kind::Flat, 1, 1);
  s.delta = 0.25;
  const Weight w = generate(s);
  CHECK(w.fn.values[0] == 1.25);
  CHECK(w.fn.values[1] == 0.75);

  // Saw at L=2: midpoints hit the shape at -1/2, 1/2, -1/2, 1/2.
  WeightFamilySpec saw = base(WeightFamilySpec::Kind::Flat, 1, 2);
  saw.shape = FlatShape::Saw;
  saw.delta = 0.5;
  const Weight ws = generate(saw);
  CHECK(ws.fn.values == std::vector<double>{0.75, 1.25, 0.75, 1.25});

  WeightFamilySpec bad = base(WeightFamilySpec::Kind::Flat, 1, 2);
  bad.delta = 1.0;
  CHECK_THROWS_AS(generate(bad), BadFormat);
}

TEST_CASE("step family") {
  WeightFamilySpec s = base(WeightFamilySpec::Kind::Step, 1, 1);
  s.ratio = 2.0;
  CHECK(generate(s).fn.values == std::vector<double>{2.0, 1.0});

  // In n=2 the split only reads the first axis.
  WeightFamilySpec s2 = base(WeightFamilySpec::Kind::Step, 2, 1);
  s2.ratio = 3.0;
  CHECK(generate(s2).fn.values == std::vector<double>{3.0, 3.0, 1.0, 1.0});

  s.ratio = 0.0;
  CHECK_THROWS_AS(generate(s), BadFormat);
}

TEST_CASE("power family") {
  // alpha = 1, center = 0: exact cell averages equal the midpoints.
  WeightFamilySpec s = base(WeightFamilySpec::Kind::Power, 1, 2);
  s.alpha = 1.0;
  s.center = 0.0;
  const Weight w = generate(s);
  for (std::int64_t i = 0; i < 4; ++i)
    CHECK(w.fn.values[static_cast<std::size_t>(i)] == cell_center(i, w.fn.grid)[0]);

  // Integrable singularity inside a cell stays finite and positive.
  WeightFamilySpec sing = base(WeightFamilySpec::Kind::Power, 1, 3);
  sing.alpha = -0.5;
  const Weight wi = generate(sing);
  for (double v : wi.fn.values) {
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
  }

  WeightFamilySpec s2 = base(WeightFamilySpec::Kind::Power, 2, 2);
  s2.alpha = -1.5;
  for (double v : generate(s2).fn.values) CHECK(std::isfinite(v));

  sing.alpha = -1.0;
  CHECK_THROWS_AS(generate(sing), BadFormat);
}

TEST_CASE("random family is deterministic per seed") {
  WeightFamilySpec s = base(WeightFamilySpec::Kind::Random, 1, 4);
  s.seed = 7;
  s.log_range = 2.0;
  const Weight a = generate(s);
  const Weight b = generate(s);
  CHECK(a.fn.values == b.fn.values);

  s.seed = 8;
  CHECK(generate(s).fn.values != a.fn.values);

  for (double v : a.fn.values) {
    CHECK(v >= std::exp(-1.0));
    CHECK(v < std::exp(1.0));
  }

  s.log_range = -0.5;
  CHECK_THROWS_AS(generate(s), BadFormat);
}

TEST_CASE("parse_weight_spec") {
  const GridSpec g = make_grid(1, 3);

  const WeightFamilySpec f = parse_weight_spec("flat:delta=0.3,shape=bump", g);
  CHECK(f.kind == WeightFamilySpec::Kind::Flat);
  CHECK(f.delta == 0.3);
  CHECK(f.shape == FlatShape::Bump);

  const WeightFamilySpec r = parse_weight_spec("random:seed=42,range=2", g);
  CHECK(r.seed == 42);
  CHECK(r.log_range == 2.0);

  const WeightFamilySpec p = parse_weight_spec("power:alpha=-0.5,center=0.25", g);
  CHECK(p.alpha == -0.5);
  CHECK(p.center == 0.25);

  // Bare kind uses the defaults.
  CHECK(parse_weight_spec("flat", g).delta == 0.0);
  CHECK(parse_weight_spec("step", g).ratio == 2.0);

  CHECK_THROWS_AS(parse_weight_spec("gauss:alpha=1", g), BadFormat);
  CHECK_THROWS_AS(parse_weight_spec("flat:delta=0.3x", g), BadFormat);
  CHECK_THROWS_AS(parse_weight_spec("flat:delta=", g), BadFormat);
  CHECK_THROWS_AS(parse_weight_spec("flat:wat=1", g), BadFormat);
  CHECK_THROWS_AS(parse_weight_spec("flat:shape=tri", g), BadFormat);
  CHECK_THROWS_AS(parse_weight_spec("flat:delta", g), BadFormat);
  CHECK_THROWS_AS(parse_weight_spec("step:ratio=-1", g), BadFormat);
  CHECK_THROWS_AS(parse_weight_spec("flat:delta=1", g), BadFormat);
}
