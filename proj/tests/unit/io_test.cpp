#include <doctest.h>

#include <cstdio>
#include <random>
#include <sstream>

#include "flatweights/io.hpp"

using namespace flatweights;

namespace {

GridFn random_fn(GridSpec g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(static_cast<std::size_t>(g.cell_count()));
  for (auto& x : v)
    x = -3.0 + 6.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  return make_grid_fn(g, std::move(v));
}

}  // namespace

TEST_CASE("csv round trip is bit exact") {
  for (const GridSpec g : {make_grid(1, 4), make_grid(2, 3)}) {
    const GridFn f = random_fn(g, 11);
    std::stringstream ss;
    write_grid_fn_csv(f, ss);
    const GridFn back = read_grid_fn_csv(ss);
    CHECK(back.grid == f.grid);
    CHECK(back.values == f.values);  // 17 significant digits round-trip
  }
}

TEST_CASE("json round trip is bit exact") {
  const GridFn f = random_fn(make_grid(2, 2), 5);
  std::stringstream ss;
  write_grid_fn_json(f, ss);
  const GridFn back = read_grid_fn_json(ss);
  CHECK(back.grid == f.grid);
  CHECK(back.values == f.values);
}

TEST_CASE("csv accepts the labeled header form") {
  std::stringstream ss("n,L\n1,1\n0.5,2\n");
  const GridFn f = read_grid_fn_csv(ss);
  CHECK(f.grid.dim == 1);
  CHECK(f.grid.level == 1);
  CHECK(f.values == std::vector<double>{0.5, 2.0});
}

TEST_CASE("csv format errors") {
  std::stringstream empty("");
  CHECK_THROWS_AS(read_grid_fn_csv(empty), BadFormat);
  std::stringstream garbage("1,1\nfoo,2\n");
  CHECK_THROWS_AS(read_grid_fn_csv(garbage), BadFormat);
  std::stringstream short_row("1,2\n1,2\n");
  CHECK_THROWS_AS(read_grid_fn_csv(short_row), SizeMismatch);
  std::stringstream bad_head("1\n1,2\n");
  CHECK_THROWS_AS(read_grid_fn_csv(bad_head), BadFormat);
}

TEST_CASE("json format errors") {
  std::stringstream notjson("{");
  CHECK_THROWS_AS(read_grid_fn_json(notjson), BadFormat);
  std::stringstream missing(R"({"n":1,"L":1})");
  CHECK_THROWS_AS(read_grid_fn_json(missing), BadFormat);
}

TEST_CASE("file dispatch by extension and weight positivity") {
  const GridFn f = random_fn(make_grid(1, 3), 9);
  const std::string csv = "/tmp/fw_io_test.csv";
  const std::string json = "/tmp/fw_io_test.json";
  write_grid_fn_file(f, csv);
  write_grid_fn_file(f, json);
  CHECK(read_grid_fn_file(csv).values == f.values);
  CHECK(read_grid_fn_file(json).values == f.values);
  // signed values load as grid fns but not as weights
  write_grid_fn_file(make_grid_fn(make_grid(1, 0), {-1.0}), csv);
  CHECK_THROWS_AS(read_weight_file(csv), NonPositiveValue);
  const Weight w = make_weight(f.grid, {1, 2, 3, 4, 5, 6, 7, 8});
  write_weight_file(w, csv);
  CHECK(read_weight_file(csv).fn.values == w.fn.values);
  std::remove(csv.c_str());
  std::remove(json.c_str());
  CHECK_THROWS_AS(read_grid_fn_file("/tmp/definitely_missing_fw.csv"), BadFormat);
}
