#include "flatweights/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace flatweights {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& tok) {
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos != tok.size()) throw BadFormat("trailing characters in number: " + tok);
    return v;
  } catch (const std::invalid_argument&) {
    throw BadFormat("not a number: " + tok);
  } catch (const std::out_of_range&) {
    throw BadFormat("number out of range: " + tok);
  }
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  return out;
}

}  // namespace

void write_grid_fn_csv(const GridFn& f, std::ostream& out) {
  out << f.grid.dim << ',' << f.grid.level << '\n';
  const std::int64_t n = f.grid.cells_per_side();
  const std::int64_t rows = f.grid.dim == 1 ? 1 : n;
  const std::int64_t cols = f.grid.dim == 1 ? n : n;
  for (std::int64_t r = 0; r < rows; ++r) {
    for (std::int64_t c = 0; c < cols; ++c) {
      if (c) out << ',';
      out << fmt17(f.values[static_cast<std::size_t>(r * cols + c)]);
    }
    out << '\n';
  }
}

GridFn read_grid_fn_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw BadFormat("empty weight file");
  if (line == "n,L" || line == "n,L\r") {
    if (!std::getline(in, line)) throw BadFormat("missing header values");
  }
  auto head = split_commas(line);
  if (head.size() != 2) throw BadFormat("header must be n,L");
  const int dim = static_cast<int>(parse_double(head[0]));
  const int level = static_cast<int>(parse_double(head[1]));
  GridSpec grid = make_grid(dim, level);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(grid.cell_count()));
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    for (const auto& tok : split_commas(line)) values.push_back(parse_double(tok));
  }
  return make_grid_fn(grid, std::move(values));
}

void write_grid_fn_json(const GridFn& f, std::ostream& out) {
  nlohmann::json j;
  j["n"] = f.grid.dim;
  j["L"] = f.grid.level;
  j["values"] = f.values;
  out << j.dump() << '\n';
}

GridFn read_grid_fn_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw BadFormat(std::string("bad JSON: ") + e.what());
  }
  if (!j.contains("n") || !j.contains("L") || !j.contains("values"))
    throw BadFormat("JSON weight needs n, L, values");
  GridSpec grid = make_grid(j["n"].get<int>(), j["L"].get<int>());
  return make_grid_fn(grid, j["values"].get<std::vector<double>>());
}

namespace {

bool has_json_ext(const std::string& path) {
  auto dot = path.rfind('.');
  return dot != std::string::npos && path.substr(dot) == ".json";
}

}  // namespace

GridFn read_grid_fn_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadFormat("cannot open " + path);
  return has_json_ext(path) ? read_grid_fn_json(in) : read_grid_fn_csv(in);
}

void write_grid_fn_file(const GridFn& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw BadFormat("cannot open " + path + " for writing");
  if (has_json_ext(path))
    write_grid_fn_json(f, out);
  else
    write_grid_fn_csv(f, out);
}

Weight read_weight_file(const std::string& path) {
  GridFn f = read_grid_fn_file(path);
  return make_weight(f.grid, std::move(f.values));
}

void write_weight_file(const Weight& w, const std::string& path) {
  write_grid_fn_file(w.fn, path);
}

}  // namespace flatweights
