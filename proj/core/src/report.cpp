#include "flatweights/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "flatweights/parallel.hpp"
#include "flatweights/sobolev.hpp"

namespace flatweights {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json num_or_text(double v) {
  if (std::isfinite(v)) return v;
  return fmt17(v);
}

json witness_json(const Cube& q) {
  return json{{"anchor", {q.anchor[0], q.anchor[1]}}, {"side", q.side}};
}

json sup_json(const SupResult& s) {
  return json{{"value", num_or_text(s.value)}, {"witness", witness_json(s.witness)}};
}

json family_json(const CubeFamily& fam) {
  if (fam.kind == CubeFamily::Kind::Dyadic) return json{{"kind", "dyadic"}};
  return json{{"kind", "aligned"},
              {"anchor_stride", fam.anchor_stride},
              {"side_stride", fam.side_stride}};
}

}  // namespace

std::string constants_report_json(const ConstantsReport& r) {
  json j;
  j["v"] = 1;
  j["n"] = r.grid.dim;
  j["L"] = r.grid.level;
  j["family"] = family_json(r.family);
  j["doubling_mode"] =
      r.doubling_mode == DoubleMode::Clip ? "clip" : "require_inside";
  json aps = json::array();
  for (const auto& [p, s] : r.a_p_values) {
    json e = sup_json(s);
    e["p"] = p;
    aps.push_back(std::move(e));
  }
  j["a_p"] = std::move(aps);
  j["a_1"] = sup_json(r.a_1);
  j["fujii_wilson"] = sup_json(r.fujii_wilson);
  j["hruscev"] = sup_json(r.hruscev);
  j["log_ainfty"] = sup_json(r.log_ainfty);
  j["bmo_log"] = sup_json(r.bmo_log);
  j["bmo_w_log"] = sup_json(r.bmo_w_log);

  json dbl = sup_json(r.doubling);
  if (!r.doubling_defined || std::isnan(r.doubling.value)) dbl["value"] = nullptr;
  dbl["defined"] = r.doubling_defined;
  j["doubling"] = std::move(dbl);

  json jn = sup_json(r.jn_r_star);
  const bool finite = std::isfinite(r.jn_r_star.value);
  if (!finite) jn["value"] = nullptr;
  jn["finite"] = finite;
  j["jn_r_star"] = std::move(jn);
  return j.dump(2) + "\n";
}

std::string check_results_json(const std::vector<CheckResult>& results) {
  json arr = json::array();
  for (const auto& c : results) {
    json j;
    j["id"] = c.id;
    j["lhs"] = num_or_text(c.lhs);
    j["rhs"] = num_or_text(c.rhs);
    j["ratio"] = num_or_text(c.ratio);
    j["pass"] = c.pass;
    j["tol"] = c.tol;
    j["witness"] = c.witness ? witness_json(*c.witness) : json(nullptr);
    json params;
    for (const auto& [k, v] : c.params) params[k] = num_or_text(v);
    j["params"] = std::move(params);
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string run_sweep(const SweepSpec& spec) {
  const GridSpec g = make_grid(spec.grid.dim, spec.grid.level);
  const int n = g.dim;
  const double tau = spec.tau > 0.0 ? spec.tau : std::ldexp(1.0, n + 1);

  std::vector<std::string> rows(spec.deltas.size());
  parallel_for(static_cast<std::int64_t>(spec.deltas.size()), [&](std::int64_t k) {
    const double delta = spec.deltas[static_cast<std::size_t>(k)];
    WeightFamilySpec ws;
    ws.kind = WeightFamilySpec::Kind::Flat;
    ws.grid = g;
    ws.delta = delta;
    ws.shape = spec.shape;
    const Weight w = generate(ws);
    const GridFn lg = log_fn(w);

    const double fw = fujii_wilson(w, spec.family).value;
    const double hr = hruscev(w, spec.family).value;
    const double bl = bmo(lg, spec.family).value;
    const double bwl = bmo_w(lg, w, spec.family).value;
    const double jn = jn_sup_r(w, spec.family).value;
    const EmbeddingResult emb = embedding_via_jn(w, spec.family);

    double dbl = std::numeric_limits<double>::quiet_NaN();
    try {
      dbl = doubling(w, spec.family).value;
    } catch (const NoAdmissibleCube&) {
    }
    const double pstar_w = n >= 2 ? sobolev_exponent(1.0, fw, tau, n)
                                  : std::numeric_limits<double>::quiet_NaN();
    const double ikappa =
        check_doubling_bound(w, spec.family, DoubleMode::RequireInside, spec.kappa)
            .params.at("implied_kappa");
    const double icn = check_tsutsui(lg, w, spec.family).params.at("implied_cn");
    const double lim = rhi_eps_limit(fw, n);
    const double eps = std::isinf(lim) ? 1.0 : lim;
    const double rhi = check_rhi(w, eps, spec.family).ratio;

    const double cols[] = {delta,   fw - 1.0,       hr - 1.0, bl,
                           bwl,     jn,             emb.p,    emb.check.lhs,
                           emb.check.rhs, emb.check.ratio, dbl, pstar_w,
                           ikappa,  icn,            rhi};
    std::string row = "1";
    for (double v : cols) {
      row += ',';
      row += fmt17(v);
    }
    rows[static_cast<std::size_t>(k)] = std::move(row);
  });

  std::string out =
      "v,delta,fujii_wilson_m1,hruscev_m1,bmo_log,bmo_w_log,jn_r_star,"
      "embed_p,a_p_embed,embed_bound,embed_ratio,doubling,p_star_w,"
      "implied_kappa,implied_tsutsui_cn,rhi_ratio\n";
  for (const auto& r : rows) {
    out += r;
    out += '\n';
  }
  return out;
}

}  // namespace flatweights
