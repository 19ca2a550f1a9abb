#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flatweights/checks.hpp"
#include "flatweights/families.hpp"
#include "flatweights/io.hpp"
#include "flatweights/report.hpp"

// flatw: constants, verify, and sweep commands over grid weights.
// Exit codes: 0 success / all checks pass, 1 some check failed, 2 bad input.

namespace fw = flatweights;

namespace {

struct UsageError : fw::Error {
  using Error::Error;
};

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty())
      throw UsageError("bad number in list: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty numeric list");
  return out;
}

fw::CubeFamily parse_family(const std::string& text, int level) {
  if (text == "dyadic") return fw::CubeFamily::dyadic();
  if (text == "aligned") return fw::CubeFamily::aligned_default(level);
  const std::string prefix = "aligned:";
  if (text.rfind(prefix, 0) == 0) {
    const auto nums = parse_double_list(text.substr(prefix.size()));
    if (nums.size() != 2) throw UsageError("aligned family expects aligned:a,b");
    const int a = static_cast<int>(nums[0]);
    const int b = static_cast<int>(nums[1]);
    if (a < 1 || b < 1 || nums[0] != a || nums[1] != b)
      throw UsageError("aligned strides must be positive integers");
    return fw::CubeFamily::aligned(a, b);
  }
  throw UsageError("unknown family: " + text);
}

struct WeightArgs {
  int n = 1;
  int level = -1;
  std::string weight_spec;
  std::string weight_file;
};

fw::Weight load_weight(const WeightArgs& a) {
  if (a.weight_spec.empty() == a.weight_file.empty())
    throw UsageError("need exactly one of --weight or --weight-file");
  if (!a.weight_file.empty()) {
    fw::Weight w = fw::read_weight_file(a.weight_file);
    if (a.level >= 0 && w.fn.grid.level != a.level)
      throw UsageError("--L disagrees with the weight file");
    return w;
  }
  if (a.level < 0) throw UsageError("--weight needs --L");
  const fw::GridSpec g = fw::make_grid(a.n, a.level);
  return fw::generate(fw::parse_weight_spec(a.weight_spec, g));
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw UsageError("cannot open " + out_path + " for writing");
  out << text;
}

// Each command has one output format; pinning the other one is a usage error.
void require_format(bool json_flag, bool csv_flag, bool json_native) {
  if (json_native ? csv_flag : json_flag)
    throw UsageError(json_native ? "this command emits JSON"
                                 : "this command emits CSV");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Muckenhoupt-type weight constants and inequality checks on "
               "grid weights"};
  app.require_subcommand(1);

  WeightArgs wa;
  std::string family_text = "dyadic";
  std::string p_list = "2";
  std::string checks_text;
  std::string out_path;
  std::string shape_text = "sin";
  std::string deltas_text;
  std::string delta_range;
  double tau = 0.0, tau_prime = 0.0, kappa = 1.0;
  bool as_json = false, as_csv = false;

  const auto add_common = [&](CLI::App* cmd, bool takes_weight) {
    cmd->add_option("--n", wa.n, "dimension (1 or 2)")->check(CLI::Range(1, 2));
    cmd->add_option("--L", wa.level, "refinement level (2^L cells per side)");
    cmd->add_option("--family", family_text, "dyadic | aligned | aligned:a,b");
    cmd->add_option("--out", out_path, "output file (default stdout)");
    cmd->add_flag("--json", as_json, "pin JSON output");
    cmd->add_flag("--csv", as_csv, "pin CSV output");
    if (takes_weight) {
      cmd->add_option("--weight", wa.weight_spec, "kind:key=val,...");
      cmd->add_option("--weight-file", wa.weight_file, "CSV or JSON grid file");
    }
  };

  CLI::App* c_const = app.add_subcommand("constants", "all weight constants");
  add_common(c_const, true);
  c_const->add_option("--p", p_list, "comma list of p for a_p");

  CLI::App* c_verify = app.add_subcommand("verify", "run inequality checks");
  add_common(c_verify, true);
  c_verify->add_option("--p", p_list, "comma list of p for left_open");
  c_verify->add_option("--checks", checks_text, "comma list of check ids");
  c_verify->add_option("--tau", tau, "embedding rate (0 = 2^(n+1))");
  c_verify->add_option("--tau-prime", tau_prime, "embedding bound rate");
  c_verify->add_option("--kappa", kappa, "doubling bound rate");

  CLI::App* c_sweep = app.add_subcommand("sweep", "flat-family delta sweep");
  add_common(c_sweep, false);
  c_sweep->add_option("--shape", shape_text, "sin | bump | saw");
  c_sweep->add_option("--deltas", deltas_text, "comma list of deltas");
  c_sweep->add_option("--delta-range", delta_range,
                      "lo:hi:count evenly spaced deltas");
  c_sweep->add_option("--tau", tau, "p_star_w rate (0 = 2^(n+1))");
  c_sweep->add_option("--tau-prime", tau_prime, "unused rate, kept for parity");
  c_sweep->add_option("--kappa", kappa, "doubling bound rate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_const->parsed()) {
      require_format(as_json, as_csv, true);
      const fw::Weight w = load_weight(wa);
      const fw::CubeFamily fam = parse_family(family_text, w.fn.grid.level);
      const auto report =
          fw::constants_report(w, parse_double_list(p_list), fam);
      emit(fw::constants_report_json(report), out_path);
      return 0;
    }
    if (c_verify->parsed()) {
      require_format(as_json, as_csv, true);
      const fw::Weight w = load_weight(wa);
      const fw::CubeFamily fam = parse_family(family_text, w.fn.grid.level);
      std::vector<std::string> ids;
      if (checks_text.empty()) {
        ids = fw::check_ids();
      } else {
        std::istringstream ss(checks_text);
        std::string id;
        while (std::getline(ss, id, ',')) ids.push_back(id);
      }
      fw::CheckOptions opts;
      opts.ps = parse_double_list(p_list);
      opts.tau = tau;
      opts.tau_prime = tau_prime;
      opts.kappa = kappa;
      const auto results = fw::run_checks(w, ids, fam, opts);
      emit(fw::check_results_json(results), out_path);
      for (const auto& r : results)
        if (!r.pass) return 1;
      return 0;
    }
    // sweep
    require_format(as_json, as_csv, false);
    if (wa.level < 0) throw UsageError("sweep needs --L");
    if (deltas_text.empty() == delta_range.empty())
      throw UsageError("need exactly one of --deltas or --delta-range");
    fw::SweepSpec spec;
    spec.grid = fw::make_grid(wa.n, wa.level);
    spec.family = parse_family(family_text, wa.level);
    spec.tau = tau;
    spec.tau_prime = tau_prime;
    spec.kappa = kappa;
    if (shape_text == "sin")
      spec.shape = fw::FlatShape::Sin;
    else if (shape_text == "bump")
      spec.shape = fw::FlatShape::Bump;
    else if (shape_text == "saw")
      spec.shape = fw::FlatShape::Saw;
    else
      throw UsageError("unknown shape: " + shape_text);
    if (!deltas_text.empty()) {
      spec.deltas = parse_double_list(deltas_text);
    } else {
      const auto parts = [&] {
        std::vector<std::string> v;
        std::istringstream ss(delta_range);
        std::string item;
        while (std::getline(ss, item, ':')) v.push_back(item);
        return v;
      }();
      if (parts.size() != 3) throw UsageError("--delta-range expects lo:hi:count");
      const double lo = parse_double_list(parts[0])[0];
      const double hi = parse_double_list(parts[1])[0];
      const int count = static_cast<int>(parse_double_list(parts[2])[0]);
      if (count < 1) throw UsageError("--delta-range count must be >= 1");
      for (int i = 0; i < count; ++i)
        spec.deltas.push_back(
            count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    }
    emit(fw::run_sweep(spec), out_path);
    return 0;
  } catch (const fw::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
