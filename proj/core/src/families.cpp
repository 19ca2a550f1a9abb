#include "flatweights/families.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace flatweights {

namespace {

double power_antideriv(double t, double alpha) {
  // G'(t) = |t|^alpha, continuous at 0 because alpha + 1 > 0.
  const double a1 = alpha + 1.0;
  return std::copysign(std::pow(std::abs(t), a1) / a1, t);
}

double flat_shape_1d(FlatShape shape, double x) {
  switch (shape) {
    case FlatShape::Sin:
      return std::sin(2.0 * std::numbers::pi * x);
    case FlatShape::Bump: {
      const double t = 2.0 * x - 1.0;
      return std::exp(1.0 - 1.0 / (1.0 - t * t));
    }
    case FlatShape::Saw: {
      double f = 2.0 * x;
      return 2.0 * (f - std::floor(f)) - 1.0;
    }
  }
  return 0.0;
}

void validate_spec(const WeightFamilySpec& spec) {
  using Kind = WeightFamilySpec::Kind;
  switch (spec.kind) {
    case Kind::Power:
      if (!(spec.alpha > -spec.grid.dim))
        throw BadFormat("power weight needs alpha > -n");
      break;
    case Kind::Flat:
      if (!(std::abs(spec.delta) < 1.0))
        throw BadFormat("flat weight needs |delta| < 1");
      break;
    case Kind::Step:
      if (!(spec.ratio > 0.0)) throw BadFormat("step ratio must be positive");
      break;
    case Kind::Random:
      if (!(spec.log_range >= 0.0))
        throw BadFormat("random log range must be nonnegative");
      break;
  }
}

}  // namespace

Weight generate(const WeightFamilySpec& spec) {
  validate_spec(spec);
  const GridSpec g = make_grid(spec.grid.dim, spec.grid.level);
  const double h = g.cell_width();
  std::vector<double> vals(static_cast<std::size_t>(g.cell_count()));
  using Kind = WeightFamilySpec::Kind;

  switch (spec.kind) {
    case Kind::Power: {
      for (std::int64_t k = 0; k < g.cell_count(); ++k) {
        const auto c = cell_coords(k, g);
        if (g.dim == 1) {
          const double a = c[0] * h - spec.center;
          const double b = (c[0] + 1) * h - spec.center;
          vals[static_cast<std::size_t>(k)] =
              (power_antideriv(b, spec.alpha) - power_antideriv(a, spec.alpha)) / h;
        } else {
          const auto mid = cell_center(k, g);
          const double d = std::hypot(mid[0] - spec.center, mid[1] - spec.center);
          vals[static_cast<std::size_t>(k)] = std::pow(d, spec.alpha);
        }
      }
      break;
    }
    case Kind::Flat: {
      for (std::int64_t k = 0; k < g.cell_count(); ++k) {
        const auto mid = cell_center(k, g);
        double s = flat_shape_1d(spec.shape, mid[0]);
        if (g.dim == 2) s *= flat_shape_1d(spec.shape, mid[1]);
        vals[static_cast<std::size_t>(k)] = 1.0 + spec.delta * s;
      }
      break;
    }
    case Kind::Step: {
      for (std::int64_t k = 0; k < g.cell_count(); ++k) {
        const auto mid = cell_center(k, g);
        vals[static_cast<std::size_t>(k)] = mid[0] < spec.split ? spec.ratio : 1.0;
      }
      break;
    }
    case Kind::Random: {
      std::mt19937_64 rng(spec.seed);
      for (auto& v : vals) {
        // 53-bit uniform in [0,1); avoids distribution objects so the stream
        // is identical on every platform.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        v = std::exp((u - 0.5) * spec.log_range);
      }
      break;
    }
  }
  return make_weight(g, std::move(vals));
}

WeightFamilySpec parse_weight_spec(const std::string& text, GridSpec grid) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  WeightFamilySpec spec;
  spec.grid = grid;
  using Kind = WeightFamilySpec::Kind;
  if (kind == "power")
    spec.kind = Kind::Power;
  else if (kind == "flat")
    spec.kind = Kind::Flat;
  else if (kind == "step")
    spec.kind = Kind::Step;
  else if (kind == "random")
    spec.kind = Kind::Random;
  else
    throw BadFormat("unknown weight kind: " + kind);

  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    std::istringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw BadFormat("weight spec expects key=value, got: " + item);
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }

  const auto num = [&](const std::string& key, double* out) {
    auto it = kv.find(key);
    if (it == kv.end()) return false;
    std::size_t used = 0;
    try {
      *out = std::stod(it->second, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != it->second.size() || it->second.empty())
      throw BadFormat("bad numeric value for " + key + ": " + it->second);
    kv.erase(it);
    return true;
  };

  num("alpha", &spec.alpha);
  num("center", &spec.center);
  num("delta", &spec.delta);
  num("ratio", &spec.ratio);
  num("split", &spec.split);
  num("range", &spec.log_range);
  double seed = 0;
  if (num("seed", &seed)) spec.seed = static_cast<std::uint64_t>(seed);
  if (auto it = kv.find("shape"); it != kv.end()) {
    if (it->second == "sin")
      spec.shape = FlatShape::Sin;
    else if (it->second == "bump")
      spec.shape = FlatShape::Bump;
    else if (it->second == "saw")
      spec.shape = FlatShape::Saw;
    else
      throw BadFormat("unknown shape: " + it->second);
    kv.erase(it);
  }
  if (!kv.empty()) throw BadFormat("unknown weight key: " + kv.begin()->first);
  validate_spec(spec);
  return spec;
}

}  // namespace flatweights
