// Copyright 2026 The maser-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "maser_tools/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>

#include "maser/analytics.hpp"
#include "maser/errors.hpp"
#include "maser/observables.hpp"
#include "maser/optimizer.hpp"
#include "maser_tools/sweep.hpp"
#include "maser_tools/worker_pool.hpp"
#include "presets.hpp"

namespace maser::tools {

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError("'" + where + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

// 19.5 -> "19p5", -2 -> "m2"
std::string tag(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  std::string s = buf;
  for (char& c : s) {
    if (c == '.') c = 'p';
    if (c == '-') c = 'm';
  }
  return s;
}

json fano_json(const std::optional<double>& f) { return f ? num(*f) : json(nullptr); }

json section_or_empty(const json& obj, const char* key) { return obj.contains(key) ? obj.at(key) : json::object(); }

std::vector<double> mean_n_of(const std::vector<PointResult>& rs) {
  std::vector<double> v;
  for (const auto& r : rs) v.push_back(r.ok ? r.mean_n : std::nan(""));
  return v;
}

std::vector<double> fano_of(const std::vector<PointResult>& rs) {
  std::vector<double> v;
  for (const auto& r : rs) v.push_back(r.ok && r.fano ? *r.fano : std::nan(""));
  return v;
}

std::vector<double> residual_of(const std::vector<PointResult>& rs) {
  std::vector<double> v;
  for (const auto& r : rs) v.push_back(r.ok ? r.residual : std::nan(""));
  return v;
}

json failures_of(const std::vector<PointResult>& rs) {
  json f = json::array();
  for (size_t i = 0; i < rs.size(); ++i)
    if (!rs[i].ok) f.push_back({{"index", i}, {"error", rs[i].error}});
  return f;
}

// Runs the truncation check at the extreme point when enabled; flags the context.
json truncation_check_json(ScenarioContext& c, const std::vector<SystemParams>& points,
                           const std::vector<PointResult>& results) {
  if (!get_bool(c.run.scenario(), "truncation_check", false)) return nullptr;
  const int i = extreme_point(results);
  if (i < 0) return nullptr;
  const TruncationCheck tc = check_truncation(points[static_cast<size_t>(i)], results[static_cast<size_t>(i)].mean_n,
                                              c.run.steady);
  if (tc.shifted || tc.saturated) c.truncation_flag = true;
  json j = to_json(tc);
  j["point_index"] = i;
  return j;
}

// ---------------------------------------------------------------------------

void run_evolve(ScenarioContext& c) {
  const json& sc = c.run.scenario();
  reject_unknown(sc, {"t_end_us", "samples", "initial_levels", "panels"}, "scenario");
  const double t_end = get_double(sc, "t_end_us", 1.0);
  const int samples = get_int(sc, "samples", 201);
  if (!(t_end > 0.0) || samples < 2) throw ConfigError("need t_end_us > 0 and samples >= 2");
  std::vector<int> levels{0, 0, 0};
  if (sc.contains("initial_levels")) {
    if (!sc.at("initial_levels").is_array() || sc.at("initial_levels").size() != 3)
      throw ConfigError("initial_levels must be [transmon, auxiliary, reservoir]");
    for (int k = 0; k < 3; ++k) levels[static_cast<size_t>(k)] = sc.at("initial_levels")[static_cast<size_t>(k)].get<int>();
  }
  std::vector<std::pair<std::string, SystemParams>> panels;
  if (sc.contains("panels") && !sc.at("panels").empty()) {
    for (const auto& panel : sc.at("panels")) {
      reject_unknown(panel, {"name", "system"}, "scenario.panels[]");
      panels.emplace_back(get_string(panel, "name", "panel" + std::to_string(panels.size())),
                          patch_system(c.run.system, section_or_empty(panel, "system")));
    }
  } else {
    panels.emplace_back("main", c.run.system);
  }
  std::vector<double> t(static_cast<size_t>(samples));
  for (int i = 0; i < samples; ++i) t[static_cast<size_t>(i)] = t_end * i / (samples - 1);

  std::vector<EvolutionResult> results(panels.size());
  parallel_for(panels.size(), c.opts.workers, [&](size_t i) {
    const SystemParams& p = panels[i].second;
    const HilbertSpace space = p.space();
    for (int k = 0; k < 3; ++k)
      if (levels[static_cast<size_t>(k)] < 0 || levels[static_cast<size_t>(k)] >= space.dims()[static_cast<size_t>(k)])
        throw ConfigError("initial level outside the truncation");
    const Liouvillian l(build_hamiltonian(p), collapse_operators(p));
    const auto rho0 = DensityMatrix::from_ket(space, basis_ket(space, levels));
    results[i] = evolve(l, rho0, t, c.run.evolve, maser_recorders());
  });

  json panels_summary = json::array();
  for (size_t i = 0; i < panels.size(); ++i) {
    const auto& [name, p] = panels[i];
    const EvolutionResult& r = results[i];
    json series = json::object();
    for (const auto& [key, values] : r.series) series[key] = num_array(values);
    c.out.write_json("evolve_" + name + ".json",
                     {{"panel", name}, {"system", system_to_json(p)}, {"times_us", r.times}, {"series", series},
                      {"steps_accepted", r.steps_accepted}, {"steps_rejected", r.steps_rejected}},
                     "time_series", "populations and photon statistics versus time, panel " + name);
    const auto& pf = r.series.at("p_f");
    const auto period = oscillation_period(r.times, pf);
    panels_summary.push_back({{"panel", name},
                              {"max_p_f", *std::max_element(pf.begin(), pf.end())},
                              {"p_f_period_us", period ? json(*period) : json(nullptr)},
                              {"final_p_g", r.series.at("p_g").back()},
                              {"final_p_e", r.series.at("p_e").back()},
                              {"final_p_f", pf.back()},
                              {"final_inversion", r.series.at("p_e").back() - r.series.at("p_g").back()},
                              {"steps_accepted", r.steps_accepted}});
  }
  c.summary["panels"] = panels_summary;
}

// ---------------------------------------------------------------------------

void run_steady(ScenarioContext& c) {
  const json& sc = c.run.scenario();
  reject_unknown(sc, {"truncation_check"}, "scenario");
  const SystemParams& p = c.run.system;
  const PointResult r = solve_point(p, c.run.steady, true);
  if (!r.ok) throw SolverError(r.error);
  json doc = to_json(r, true);
  doc["power_watts"] = emitted_power(r.mean_n, p.kappa_r, p.omega_ge).watts;
  doc["saturated"] = r.mean_n > 0.8 * p.dims.reservoir;
  if (doc["saturated"].get<bool>()) c.truncation_flag = true;
  const std::vector<SystemParams> pts{p};
  const std::vector<PointResult> rs{r};
  doc["truncation_check"] = truncation_check_json(c, pts, rs);
  c.out.write_json("steady.json", doc, "steady_state", "steady-state observables and reservoir Fock distribution");
  c.summary = {{"mean_n", r.mean_n},      {"fano", fano_json(r.fano)},     {"power_dbm", num(r.power_dbm)},
               {"residual", r.residual},  {"method", r.method},            {"iterations", r.iterations},
               {"seconds", r.seconds},    {"saturated", doc["saturated"]}};
}

// ---------------------------------------------------------------------------

void run_spectroscopy(ScenarioContext& c) {
  const json& sc = c.run.scenario();
  reject_unknown(sc, {"drive_offset_mhz", "sample_times_us", "transient", "truncation_check"}, "scenario");
  const std::vector<double> offsets = grid_from_json(sc.at("drive_offset_mhz"), "drive_offset_mhz");
  std::vector<double> times = sc.contains("sample_times_us") ? grid_from_json(sc.at("sample_times_us"), "sample_times_us")
                                                             : std::vector<double>{};
  std::sort(times.begin(), times.end());
  const bool transient = get_bool(sc, "transient", true) && !times.empty();
  const SystemParams& base = c.run.system;

  std::vector<SystemParams> points;
  for (double o : offsets) {
    SystemParams p = base;
    p.omega_d = base.omega_d + mhz(o);
    points.push_back(p);
  }
  const auto steady = solve_points(points, c.run.steady, c.opts.workers, false);

  std::vector<std::vector<double>> transient_n(points.size(), std::vector<double>(times.size(), std::nan("")));
  std::vector<std::string> transient_err(points.size());
  if (transient) {
    std::vector<double> grid{0.0};
    grid.insert(grid.end(), times.begin(), times.end());
    parallel_for(points.size(), c.opts.workers, [&](size_t i) {
      try {
        const SystemParams& p = points[i];
        const Liouvillian l(build_hamiltonian(p), collapse_operators(p));
        const auto rho0 = DensityMatrix::from_ket(p.space(), basis_ket(p.space(), {0, 0, 0}));
        const std::vector<NamedFunctional> rec{
            {"mean_n", [](const DensityMatrix& rho) { return photon_statistics(rho).mean_n; }}};
        const EvolutionResult r = evolve(l, rho0, grid, c.run.evolve, rec);
        for (size_t k = 0; k < times.size(); ++k) transient_n[i][k] = r.series.at("mean_n")[k + 1];
      } catch (const Error& e) {
        transient_err[i] = e.what();
      }
    });
  }

  // two-photon lines |geN>+- -> |gef(N+1)>+-, with the model's f-e element sqrt(2) g_a
  json lines = json::array();
  for (int n = 0; n <= 3; ++n) {
    const double d = pump_detuning(n, base.g_r, std::numbers::sqrt2 * base.g_a);
    lines.push_back({{"n", n}, {"plus_offset_mhz", to_mhz(d / 2.0)}, {"minus_offset_mhz", -to_mhz(d / 2.0)}});
  }
  const SidebandRates sb = sideband_rates(base.alpha, base.g_r, base.g_a);

  json transient_json = json::object();
  for (size_t k = 0; k < times.size(); ++k) {
    std::vector<double> col;
    for (size_t i = 0; i < points.size(); ++i) col.push_back(transient_n[i][k]);
    transient_json[tag(times[k])] = {{"time_us", times[k]}, {"mean_n", num_array(col)}};
  }
  json transient_failures = json::array();
  for (size_t i = 0; i < points.size(); ++i)
    if (!transient_err[i].empty()) transient_failures.push_back({{"index", i}, {"error", transient_err[i]}});

  std::vector<double> drive_mhz;
  for (const auto& p : points) drive_mhz.push_back(to_mhz(p.omega_d));
  json steady_points = json::array();
  for (const auto& r : steady) steady_points.push_back(to_json(r));

  json doc = {{"drive_offset_mhz", offsets},
              {"drive_frequency_mhz", drive_mhz},
              {"steady",
               {{"mean_n", num_array(mean_n_of(steady))},
                {"fano", num_array(fano_of(steady))},
                {"residual", num_array(residual_of(steady))},
                {"points", steady_points},
                {"failures", failures_of(steady)}}},
              {"transient", transient_json},
              {"transient_failures", transient_failures},
              {"two_photon_lines", lines},
              {"sideband_rates",
               {{"delta_plus_mhz", to_mhz(sb.delta_plus)},
                {"delta_minus_mhz", to_mhz(sb.delta_minus)},
                {"amplitude_ratio", sb.amplitude_ratio},
                {"rate_ratio", sb.rate_ratio}}}};
  doc["truncation_check"] = truncation_check_json(c, points, steady);
  c.out.write_json("spectroscopy.json", doc, "line", "reservoir photon number versus drive frequency");

  std::vector<std::string> header{"drive_offset_mhz", "mean_n_steady", "fano_steady"};
  for (double t : times) header.push_back("mean_n_t" + tag(t) + "us");
  header.push_back("residual");
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < points.size(); ++i) {
    std::vector<double> row{offsets[i], steady[i].ok ? steady[i].mean_n : std::nan(""),
                            steady[i].ok && steady[i].fano ? *steady[i].fano : std::nan("")};
    for (size_t k = 0; k < times.size(); ++k) row.push_back(transient_n[i][k]);
    row.push_back(steady[i].ok ? steady[i].residual : std::nan(""));
    rows.push_back(row);
  }
  c.out.write_csv("spectroscopy.csv", header, rows, "line", "spectroscopy table");

  const int best = extreme_point(steady);
  c.summary = {{"points", points.size()},
               {"failures", failure_count(steady)},
               {"max_residual", max_residual(steady)},
               {"steady_peak_offset_mhz", best >= 0 ? json(offsets[static_cast<size_t>(best)]) : json(nullptr)},
               {"steady_peak_mean_n", best >= 0 ? json(steady[static_cast<size_t>(best)].mean_n) : json(nullptr)}};
  for (size_t k = 0; k < times.size(); ++k) {
    int arg = -1;
    for (size_t i = 0; i < points.size(); ++i)
      if (std::isfinite(transient_n[i][k]) && (arg < 0 || transient_n[i][k] > transient_n[static_cast<size_t>(arg)][k]))
        arg = static_cast<int>(i);
    c.summary["transient_peak_offset_mhz_t" + tag(times[k])] = arg >= 0 ? json(offsets[static_cast<size_t>(arg)]) : json(nullptr);
  }
}

// ---------------------------------------------------------------------------

void run_coupling(ScenarioContext& c) {
  const json& sc = c.run.scenario();
  reject_unknown(sc, {"g_r_mhz", "g_a_mhz", "drive_mhz", "truncation_check"}, "scenario");
  const auto gr = grid_from_json(sc.at("g_r_mhz"), "g_r_mhz");
  const auto ga = grid_from_json(sc.at("g_a_mhz"), "g_a_mhz");
  const auto drives = grid_from_json(sc.at("drive_mhz"), "drive_mhz");
  json maps = json::array();
  json summary = json::array();
  for (double drive : drives) {
    std::vector<SystemParams> points;
    for (double r : gr)
      for (double a : ga) {
        SystemParams p = c.run.system;
        p.g_r = mhz(r);
        p.g_a = mhz(a);
        p.drive = mhz(drive);
        points.push_back(p);
      }
    const auto res = solve_points(points, c.run.steady, c.opts.workers, false);
    json n_map = json::array(), f_map = json::array();
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < gr.size(); ++i) {
      json n_row = json::array(), f_row = json::array();
      for (size_t k = 0; k < ga.size(); ++k) {
        const PointResult& r = res[i * ga.size() + k];
        const double f = r.ok && r.fano ? *r.fano : std::nan("");
        n_row.push_back(r.ok ? num(r.mean_n) : json(nullptr));
        f_row.push_back(num(f));
        rows.push_back({gr[i], ga[k], r.ok ? r.mean_n : std::nan(""), f, std::log10(f),
                        r.ok ? r.residual : std::nan(""), r.ok ? 1.0 : 0.0});
      }
      n_map.push_back(n_row);
      f_map.push_back(f_row);
    }
    const std::string csv = "coupling_drive_" + tag(drive) + ".csv";
    c.out.write_csv(csv, {"g_r_mhz", "g_a_mhz", "mean_n", "fano", "log10_fano", "residual", "ok"}, rows, "heatmap",
                    "steady-state <N> and Fano factor over (g_r, g_a) at drive " + tag(drive) + " MHz");
    json entry = {{"drive_mhz", drive},         {"csv", csv},
                  {"mean_n", n_map},            {"fano", f_map},
                  {"failures", failures_of(res)}, {"max_residual", max_residual(res)}};
    entry["truncation_check"] = truncation_check_json(c, points, res);
    maps.push_back(entry);
    const int best = extreme_point(res);
    summary.push_back({{"drive_mhz", drive},
                       {"failures", failure_count(res)},
                       {"max_residual", max_residual(res)},
                       {"max_mean_n", best >= 0 ? json(res[static_cast<size_t>(best)].mean_n) : json(nullptr)}});
  }
  c.out.write_json("coupling.json", {{"g_r_mhz", gr}, {"g_a_mhz", ga}, {"maps", maps}}, "heatmap",
                   "coupling sweep maps, indexed [g_r][g_a]");
  c.summary["drives"] = summary;
}

// ---------------------------------------------------------------------------

struct NamedPoint {
  std::string name;
  bool unspecified = false;
  double g_r = 0.0, g_a = 0.0;
};

std::vector<NamedPoint> named_points(const json& arr) {
  std::vector<NamedPoint> pts;
  for (const auto& j : arr) {
    reject_unknown(j, {"name", "g_r_mhz", "g_a_mhz", "unspecified"}, "scenario.points[]");
    NamedPoint p;
    p.name = get_string(j, "name", "");
    if (p.name.empty()) throw ConfigError("points need a name");
    p.unspecified = get_bool(j, "unspecified", false);
    if (!p.unspecified) {
      p.g_r = mhz(get_double(j, "g_r_mhz"));
      p.g_a = mhz(get_double(j, "g_a_mhz"));
    }
    pts.push_back(p);
  }
  return pts;
}

// Wigner grid, radial profile and Fock analysis of the reservoir state.
json reservoir_snapshot(ArtifactWriter& out, const std::string& stem, const DensityMatrix& rho, const json& grid_cfg,
                        const json& radial_cfg, double gap_level) {
  const DensityMatrix res = rho.space().num_subsystems() > 1 ? ptrace(rho, kReservoir) : rho;
  const PhotonStatistics stats = photon_statistics(res, 0);
  const FockShape shape = fock_shape(stats.fock_probs, 0.02, gap_level);

  WignerGridSpec spec;
  const int n = get_int(grid_cfg, "n", 121);
  spec.nx = spec.np = n;
  spec.x_min = get_double(grid_cfg, "x_min", spec.x_min);
  spec.x_max = get_double(grid_cfg, "x_max", spec.x_max);
  spec.p_min = get_double(grid_cfg, "p_min", spec.p_min);
  spec.p_max = get_double(grid_cfg, "p_max", spec.p_max);
  spec.auto_expand = get_bool(grid_cfg, "auto_expand", true);
  const WignerGrid w = wigner(res, spec);
  std::vector<std::vector<double>> rows;
  rows.reserve(w.x.size() * w.p.size());
  for (size_t i = 0; i < w.x.size(); ++i)
    for (size_t k = 0; k < w.p.size(); ++k)
      rows.push_back({w.x[i], w.p[k], w.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k))});
  out.write_csv(stem + "_wigner.csv", {"x", "p", "w"}, rows, "wigner", "reservoir Wigner function, " + stem);

  const double r_max = get_double(radial_cfg, "r_max", 0.0) > 0.0 ? get_double(radial_cfg, "r_max")
                                                                  : default_radial_extent(res);
  const RadialProfile prof =
      radial_profile(res, r_max, get_int(radial_cfg, "n_radii", 300), get_int(radial_cfg, "n_angles", 48));
  const auto radial_max = significant_maxima(prof.w, 0.02);
  json radial_r = json::array();
  for (int i : radial_max) radial_r.push_back(prof.r[static_cast<size_t>(i)]);

  json doc = {{"mean_n", stats.mean_n},
              {"fano", fano_json(stats.fock_probs.empty() ? std::nullopt : stats.fano)},
              {"fock_probs", num_array(stats.fock_probs)},
              {"fock_maxima", shape.maxima},
              {"fock_gap", shape.gap_first >= 0 ? json::array({shape.gap_first, shape.gap_last}) : json(nullptr)},
              {"fock_bimodal", shape.bimodal},
              {"wigner_csv", stem + "_wigner.csv"},
              {"wigner_integral", w.integral()},
              {"wigner_min", w.values.minCoeff()},
              {"wigner_undersampled", w.undersampled},
              {"radial_r", prof.r},
              {"radial_w", prof.w},
              {"radial_maxima_r", radial_r},
              {"radial_bimodal", radial_max.size() >= 2}};
  out.write_json(stem + "_snapshot.json", doc, "fock", "reservoir Fock distribution and Wigner analysis, " + stem);
  return {{"mean_n", stats.mean_n},
          {"fock_maxima", shape.maxima},
          {"fock_bimodal", shape.bimodal},
          {"radial_maxima_r", radial_r},
          {"radial_bimodal", radial_max.size() >= 2}};
}

void run_threshold(ScenarioContext& c) {
  const json& sc = c.run.scenario();
  reject_unknown(sc, {"points", "drive_mhz", "snapshots", "wigner", "radial", "gap_level", "truncation_check"},
                 "scenario");
  const auto named = named_points(sc.at("points"));
  const auto drives = grid_from_json(sc.at("drive_mhz"), "drive_mhz");
  const double gap_level = get_double(sc, "gap_level", 0.01);

  std::vector<SystemParams> points;
  std::vector<size_t> owner;
  for (size_t k = 0; k < named.size(); ++k) {
    if (named[k].unspecified) continue;
    for (double d : drives) {
      SystemParams p = c.run.system;
      p.g_r = named[k].g_r;
      p.g_a = named[k].g_a;
      p.drive = mhz(d);
      points.push_back(p);
      owner.push_back(k);
    }
  }
  const auto res = solve_points(points, c.run.steady, c.opts.workers, true);

  json curves = json::array();
  json summary = json::array();
  for (size_t k = 0; k < named.size(); ++k) {
    if (named[k].unspecified) {
      curves.push_back({{"name", named[k].name}, {"status", "unspecified in source; not computed"}});
      continue;
    }
    std::vector<SystemParams> pp;
    std::vector<PointResult> rr;
    for (size_t i = 0; i < points.size(); ++i)
      if (owner[i] == k) {
        pp.push_back(points[i]);
        rr.push_back(res[i]);
      }
    const auto n = mean_n_of(rr);
    const auto f = fano_of(rr);
    int fmax = -1, nmax = -1;
    for (size_t i = 0; i < rr.size(); ++i) {
      if (std::isfinite(f[i]) && (fmax < 0 || f[i] > f[static_cast<size_t>(fmax)])) fmax = static_cast<int>(i);
      if (std::isfinite(n[i]) && (nmax < 0 || n[i] > n[static_cast<size_t>(nmax)])) nmax = static_cast<int>(i);
    }
    const bool quenching = nmax >= 0 && nmax + 1 < static_cast<int>(rr.size()) && n.back() < 0.95 * n[static_cast<size_t>(nmax)];
    json fock = json::array();
    for (const auto& r : rr) fock.push_back(num_array(r.fock_probs));
    json entry = {{"name", named[k].name},
                  {"g_r_mhz", to_mhz(named[k].g_r)},
                  {"g_a_mhz", to_mhz(named[k].g_a)},
                  {"drive_mhz", drives},
                  {"mean_n", num_array(n)},
                  {"fano", num_array(f)},
                  {"residual", num_array(residual_of(rr))},
                  {"fock_probs", fock},
                  {"failures", failures_of(rr)},
                  {"fano_max", fmax >= 0 ? json(f[static_cast<size_t>(fmax)]) : json(nullptr)},
                  {"fano_max_drive_mhz", fmax >= 0 ? json(drives[static_cast<size_t>(fmax)]) : json(nullptr)},
                  {"self_quenching", quenching}};
    entry["truncation_check"] = truncation_check_json(c, pp, rr);
    curves.push_back(entry);
    summary.push_back({{"name", named[k].name},
                       {"fano_max", entry["fano_max"]},
                       {"fano_max_drive_mhz", entry["fano_max_drive_mhz"]},
                       {"max_mean_n", nmax >= 0 ? json(n[static_cast<size_t>(nmax)]) : json(nullptr)},
                       {"self_quenching", quenching},
                       {"failures", failure_count(rr)}});
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < rr.size(); ++i) rows.push_back({drives[i], n[i], f[i], rr[i].ok ? rr[i].residual : std::nan("")});
    c.out.write_csv("threshold_" + named[k].name + ".csv", {"drive_mhz", "mean_n", "fano", "residual"}, rows, "line",
                    "threshold curve for point " + named[k].name);
  }

  json snaps = json::array();
  if (sc.contains("snapshots")) {
    const json grid_cfg = section_or_empty(sc, "wigner");
    const json radial_cfg = section_or_empty(sc, "radial");
    struct Snap {
      std::string point;
      double drive;
      SystemParams p;
    };
    std::vector<Snap> todo;
    for (const auto& s : sc.at("snapshots")) {
      reject_unknown(s, {"point", "drive_mhz"}, "scenario.snapshots[]");
      const std::string name = get_string(s, "point", "");
      const auto it = std::find_if(named.begin(), named.end(), [&](const NamedPoint& p) { return p.name == name; });
      if (it == named.end() || it->unspecified) throw ConfigError("snapshot refers to unknown point '" + name + "'");
      SystemParams p = c.run.system;
      p.g_r = it->g_r;
      p.g_a = it->g_a;
      p.drive = mhz(get_double(s, "drive_mhz"));
      todo.push_back({name, get_double(s, "drive_mhz"), p});
    }
    std::vector<json> out(todo.size());
    std::mutex write_mutex;
    parallel_for(todo.size(), c.opts.workers, [&](size_t i) {
      DensityMatrix rho;
      const PointResult r = solve_point(todo[i].p, c.run.steady, &rho);
      json j = {{"point", todo[i].point}, {"drive_mhz", todo[i].drive}, {"ok", r.ok}};
      if (!r.ok) {
        j["error"] = r.error;
      } else {
        std::lock_guard lock(write_mutex);
        j.update(reservoir_snapshot(c.out, todo[i].point + "_" + tag(todo[i].drive), rho, grid_cfg,
                                    radial_cfg, gap_level));
        j["fano"] = fano_json(r.fano);
      }
      out[i] = j;
    });
    for (auto& j : out) snaps.push_back(j);
  }

  c.out.write_json("threshold.json", {{"curves", curves}, {"snapshots", snaps}}, "line",
                   "<N> and Fano factor versus drive amplitude per named point");
  c.summary = {{"points", summary}, {"snapshots", snaps}, {"max_residual", max_residual(res)},
               {"failures", failure_count(res)}};
}

// ---------------------------------------------------------------------------

void run_appendix_b(ScenarioContext& c) {
  const json& sc = c.run.scenario();
  reject_unknown(sc, {"drive_mhz", "variants", "truncation_check"}, "scenario");
  const auto drives = grid_from_json(sc.at("drive_mhz"), "drive_mhz");
  std::vector<InteractionVariant> variants;
  for (const auto& v : sc.at("variants")) variants.push_back(interaction_variant_from_string(v.get<std::string>()));

  json out = json::array();
  json summary = json::array();
  for (InteractionVariant v : variants) {
    std::vector<SystemParams> points;
    for (double d : drives) {
      SystemParams p = c.run.system;
      p.variant = v;
      p.drive = mhz(d);
      points.push_back(p);
    }
    const auto res = solve_points(points, c.run.steady, c.opts.workers, true);
    const auto f = fano_of(res);
    json fock = json::array(), peaks = json::array();
    bool single = true;
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < res.size(); ++i) {
      fock.push_back(num_array(res[i].fock_probs));
      const auto m = significant_maxima(res[i].fock_probs, 0.02);
      peaks.push_back(m.size());
      if (res[i].ok && m.size() != 1) single = false;
      for (size_t n = 0; n < res[i].fock_probs.size(); ++n)
        rows.push_back({drives[i], static_cast<double>(n), res[i].fock_probs[n]});
    }
    double fmax = std::nan("");
    for (double x : f)
      if (std::isfinite(x) && !(x <= fmax)) fmax = x;
    const std::string name = to_string(v);
    c.out.write_csv("appendix_b_fock_" + name + ".csv", {"drive_mhz", "n", "probability"}, rows, "fock",
                    "reservoir Fock distributions versus drive, " + name + " interaction");
    json entry = {{"variant", name},
                  {"drive_mhz", drives},
                  {"mean_n", num_array(mean_n_of(res))},
                  {"fano", num_array(f)},
                  {"residual", num_array(residual_of(res))},
                  {"fock_probs", fock},
                  {"fock_peak_count", peaks},
                  {"single_peaked_everywhere", single},
                  {"fano_max", num(fmax)},
                  {"failures", failures_of(res)}};
    entry["truncation_check"] = truncation_check_json(c, points, res);
    out.push_back(entry);
    summary.push_back({{"variant", name},
                       {"fano_max", num(fmax)},
                       {"single_peaked_everywhere", single},
                       {"max_residual", max_residual(res)},
                       {"failures", failure_count(res)}});
  }
  c.out.write_json("appendix_b.json", {{"variants", out}}, "line",
                   "standard versus unity-lowering reservoir interaction");
  c.summary["variants"] = summary;
}

// ---------------------------------------------------------------------------

void run_appendix_c(ScenarioContext& c) {
  const json& sc = c.run.scenario();
  reject_unknown(sc, {"detuning_mhz", "drive_mhz", "monotone_window_mhz", "truncation_check"}, "scenario");
  const auto det = grid_from_json(sc.at("detuning_mhz"), "detuning_mhz");
  const auto drives = grid_from_json(sc.at("drive_mhz"), "drive_mhz");
  const double window = get_double(sc, "monotone_window_mhz", INFINITY);
  json out = json::array(), summary = json::array();
  for (double drive : drives) {
    std::vector<SystemParams> points;
    for (double d : det) {
      SystemParams p = c.run.system;
      p.omega_d = p.omega_ge + mhz(d);
      p.drive = mhz(drive);
      points.push_back(p);
    }
    const auto res = solve_points(points, c.run.steady, c.opts.workers, false);
    const auto n = mean_n_of(res);
    // <N> at zero detuning and monotone decrease in |detuning| on each side,
    // within the window
    double n0 = std::nan("");
    for (size_t i = 0; i < det.size(); ++i)
      if (det[i] == 0.0) n0 = n[i];
    bool monotone = true;
    std::vector<size_t> order(det.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (int side : {-1, 1}) {
      std::vector<size_t> idx;
      for (size_t i : order)
        if (det[i] * side >= 0.0 && std::abs(det[i]) <= window) idx.push_back(i);
      std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return std::abs(det[a]) < std::abs(det[b]); });
      for (size_t k = 1; k < idx.size(); ++k)
        if (!(n[idx[k]] <= n[idx[k - 1]] * (1.0 + 1e-9) + 1e-12)) monotone = false;
    }
    json ratio = json::array();
    for (double x : n) ratio.push_back(num(x / n0));
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < det.size(); ++i) rows.push_back({det[i], n[i], n[i] / n0, res[i].ok ? res[i].residual : std::nan("")});
    c.out.write_csv("appendix_c_drive_" + tag(drive) + ".csv", {"detuning_mhz", "mean_n", "ratio_to_resonant", "residual"},
                    rows, "line", "direct pumping of the reservoir versus detuning, drive " + tag(drive) + " MHz");
    json entry = {{"drive_mhz", drive},       {"detuning_mhz", det},      {"mean_n", num_array(n)},
                  {"ratio_to_resonant", ratio}, {"monotone_in_abs_detuning", monotone}, {"monotone_window_mhz", num(window)},
                  {"residual", num_array(residual_of(res))}, {"failures", failures_of(res)}};
    entry["truncation_check"] = truncation_check_json(c, points, res);
    out.push_back(entry);
    summary.push_back({{"drive_mhz", drive}, {"mean_n_resonant", num(n0)}, {"monotone_in_abs_detuning", monotone},
                       {"max_residual", max_residual(res)}});
  }
  c.out.write_json("appendix_c.json", {{"curves", out}}, "line", "direct pumping scan");
  c.summary["curves"] = summary;
}

// ---------------------------------------------------------------------------

void run_wigner(ScenarioContext& c) {
  const json& sc = c.run.scenario();
  reject_unknown(sc, {"grid", "radial", "gap_level"}, "scenario");
  DensityMatrix rho;
  const PointResult r = solve_point(c.run.system, c.run.steady, &rho);
  if (!r.ok) throw SolverError(r.error);
  json snap = reservoir_snapshot(c.out, "steady", rho, section_or_empty(sc, "grid"), section_or_empty(sc, "radial"),
                                 get_double(sc, "gap_level", 0.01));
  snap["fano"] = fano_json(r.fano);
  snap["residual"] = r.residual;
  c.summary = snap;
}

// ---------------------------------------------------------------------------

FreeVariable free_from_json(const json& j, const SystemParams& base) {
  reject_unknown(j, {"param", "lower", "upper"}, "scenario.free[]");
  FreeVariable v{free_param_from_string(get_string(j, "param", "")), get_double(j, "lower"), get_double(j, "upper")};
  switch (v.param) {
    case FreeParam::kGr:
    case FreeParam::kGa:
      v.lower = mhz(v.lower);
      v.upper = mhz(v.upper);
      break;
    case FreeParam::kOmegaD:
      v.lower = base.omega_gf() / 2.0 + mhz(v.lower);
      v.upper = base.omega_gf() / 2.0 + mhz(v.upper);
      break;
    default:
      break;
  }
  return v;
}

// Internal units -> configuration units.
double to_config_units(FreeParam p, double x, const SystemParams& base) {
  switch (p) {
    case FreeParam::kGr:
    case FreeParam::kGa:
      return to_mhz(x);
    case FreeParam::kOmegaD:
      return to_mhz(x - base.omega_gf() / 2.0);
    default:
      return x;
  }
}

double from_config_units(FreeParam p, double x, const SystemParams& base) {
  switch (p) {
    case FreeParam::kGr:
    case FreeParam::kGa:
      return mhz(x);
    case FreeParam::kOmegaD:
      return base.omega_gf() / 2.0 + mhz(x);
    default:
      return x;
  }
}

void run_optimize(ScenarioContext& c) {
  const json& sc = c.run.scenario();
  reject_unknown(sc, {"free", "starts", "nelder_mead", "saturation_fraction"}, "scenario");
  OptProblem problem;
  problem.base = c.run.system;
  problem.steady = c.run.steady;
  for (const auto& j : sc.at("free")) problem.free.push_back(free_from_json(j, problem.base));
  problem.saturation_fraction = get_double(sc, "saturation_fraction", 0.8);
  const json nm = section_or_empty(sc, "nelder_mead");
  reject_unknown(nm, {"rel_tolerance", "abs_tolerance", "max_iterations", "initial_step_fraction", "penalty"},
                 "scenario.nelder_mead");
  problem.nelder_mead.rel_tolerance = get_double(nm, "rel_tolerance", 1e-4);
  problem.nelder_mead.abs_tolerance = get_double(nm, "abs_tolerance", 0.0);
  problem.nelder_mead.max_iterations = get_int(nm, "max_iterations", 500);
  problem.nelder_mead.initial_step_fraction = get_double(nm, "initial_step_fraction", 0.1);
  problem.nelder_mead.penalty = get_double(nm, "penalty", 1e3);
  problem.validate();

  const size_t n = problem.free.size();
  std::vector<std::optional<std::vector<double>>> starts;
  if (sc.contains("starts") && !sc.at("starts").empty()) {
    for (const auto& s : sc.at("starts")) {
      if (!s.is_array() || s.size() != n) throw ConfigError("each start needs one value per free variable");
      std::vector<double> x(n);
      for (size_t i = 0; i < n; ++i) x[i] = from_config_units(problem.free[i].param, s[i].get<double>(), problem.base);
      starts.emplace_back(x);
    }
  } else {
    starts.emplace_back(std::nullopt);
  }

  std::vector<OptResult> results(starts.size());
  parallel_for(starts.size(), c.opts.workers, [&](size_t i) { results[i] = optimize_power(problem, starts[i]); });

  auto conv = [&](const std::vector<double>& x) {
    json out = json::array();
    for (size_t i = 0; i < n; ++i) out.push_back(to_config_units(problem.free[i].param, x[i], problem.base));
    return out;
  };
  json runs = json::array();
  bool saturated = false;
  for (size_t s = 0; s < results.size(); ++s) {
    const OptResult& r = results[s];
    saturated = saturated || r.truncation_saturated;
    json hist = json::array();
    for (const auto& rec : r.history) {
      json verts = json::array();
      for (const auto& v : rec.vertices) verts.push_back(conv(v));
      hist.push_back({{"iteration", rec.iteration}, {"vertices", verts}, {"objective", num_array(rec.values)}});
    }
    runs.push_back({{"x_best", conv(r.x_best)},
                    {"system", system_to_json(r.best)},
                    {"power_watts", r.at_best.watts},
                    {"power_dbm", num(r.at_best.dbm)},
                    {"mean_n", r.at_best.n_ss},
                    {"fano", fano_json(r.at_best.fano)},
                    {"start_power_dbm", num(r.at_start.dbm)},
                    {"iterations", r.iterations},
                    {"evaluations", r.evaluations},
                    {"steady_state_solves", r.steady_state_solves},
                    {"converged", r.converged},
                    {"degenerate", r.degenerate},
                    {"truncation_saturated", r.truncation_saturated},
                    {"suggested_n_reservoir", r.suggested_n_reservoir},
                    {"best_power_history_watts", num_array(r.best_history)},
                    {"simplex", hist}});
  }
  // spread of the optima relative to each bound range
  double spread = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& r : results) {
      lo = std::min(lo, r.x_best[i]);
      hi = std::max(hi, r.x_best[i]);
    }
    spread = std::max(spread, (hi - lo) / (problem.free[i].upper - problem.free[i].lower));
  }
  json names = json::array();
  for (const auto& v : problem.free) names.push_back(to_string(v.param));
  c.out.write_json("optimize.json", {{"free", names}, {"runs", runs}, {"max_relative_spread", spread}}, "optimizer",
                   "Nelder-Mead power optimisation runs with simplex traces");
  if (saturated) c.truncation_flag = true;
  json brief = json::array();
  for (const auto& r : runs)
    brief.push_back({{"x_best", r["x_best"]}, {"power_dbm", r["power_dbm"]}, {"mean_n", r["mean_n"]},
                     {"converged", r["converged"]}, {"truncation_saturated", r["truncation_saturated"]}});
  c.summary = {{"free", names}, {"runs", brief}, {"max_relative_spread", spread}};
}

// ---------------------------------------------------------------------------

void run_analytic(ScenarioContext& c) {
  const json& sc = c.run.scenario();
  reject_unknown(sc, {"n_max", "kappa_a_per_us", "decay_t_end_us", "decay_samples", "sideband"}, "scenario");
  const SystemParams& p = c.run.system;
  const EffectiveRates er = effective_rates(p);
  const int n_max = get_int(sc, "n_max", 20);
  const DressedSpectrum ds = dressed_spectrum(n_max, p.g_r, p.g_a);
  auto mhz_vec = [](const std::vector<double>& v) {
    std::vector<double> o;
    for (double x : v) o.push_back(to_mhz(x));
    return o;
  };

  const auto kappas = grid_from_json(sc.at("kappa_a_per_us"), "kappa_a_per_us");
  std::vector<double> keff;
  json regimes = json::array();
  for (double k : kappas) {
    const RateWithRegime r = kappa_a_eff(p.g_a, k);
    keff.push_back(r.value);
    regimes.push_back(to_string(r.regime));
  }
  const double argmax = kappa_a_eff_argmax(p.g_a, kappas.front(), kappas.back(), static_cast<int>(kappas.size()));

  const double t_end = get_double(sc, "decay_t_end_us", 0.1);
  const int samples = get_int(sc, "decay_samples", 201);
  std::vector<double> t, rho, rho_printed;
  for (int i = 0; i < samples; ++i) {
    t.push_back(t_end * i / std::max(1, samples - 1));
    rho.push_back(decay_curve_rho_ff(t.back(), p.g_a, p.kappa_a));
    rho_printed.push_back(decay_curve_rho_ff_printed(t.back(), p.g_a, p.kappa_a));
  }

  const json sbc = section_or_empty(sc, "sideband");
  const SidebandRates sb =
      sideband_rates(p.alpha, mhz(get_double(sbc, "g_r_mhz", to_mhz(p.g_r))), mhz(get_double(sbc, "g_a_mhz", to_mhz(p.g_a))));

  const double p_watts = emitted_power(er.n_ss, p.kappa_r, p.omega_ge).watts;
  json rates = {{"omega_2ph_per_us", er.omega_2ph},
                {"omega_2ph_mhz", to_mhz(er.omega_2ph)},
                {"kappa_a_eff_per_us", er.kappa_a_eff.value},
                {"kappa_a_eff_regime", to_string(er.kappa_a_eff.regime)},
                {"gamma_per_us", er.gamma_eff.gamma},
                {"gamma_strong_pumping", er.gamma_eff.strong},
                {"n_ss", er.n_ss},
                {"kappa_r_eff_per_us", er.kappa_r_eff},
                {"reservoir_strong_coupling", er.reservoir_strong},
                {"power_watts", p_watts},
                {"power_dbm", num(emitted_power(er.n_ss, p.kappa_r, p.omega_ge).dbm)}};
  json doc = {{"effective_rates", rates},
              {"dressed",
               {{"n", n_max},
                {"delta_ge_mhz", mhz_vec(ds.delta_ge)},
                {"delta_gef_mhz", mhz_vec(ds.delta_gef)},
                {"mixing_angle", ds.mixing_angle},
                {"pump_detuning_mhz", mhz_vec(ds.pump_detuning)}}},
              {"kappa_a_eff_curve",
               {{"g_a_mhz", to_mhz(p.g_a)}, {"kappa_a_per_us", kappas}, {"kappa_a_eff_per_us", keff},
                {"regime", regimes}, {"argmax_kappa_a_per_us", argmax}}},
              {"decay_curve",
               {{"kappa_a_per_us", p.kappa_a}, {"g_a_mhz", to_mhz(p.g_a)}, {"t_us", t}, {"rho_ff", rho},
                {"rho_ff_printed_form", rho_printed}}},
              {"sideband_rates",
               {{"g_r_mhz", get_double(sbc, "g_r_mhz", to_mhz(p.g_r))},
                {"g_a_mhz", get_double(sbc, "g_a_mhz", to_mhz(p.g_a))},
                {"delta_plus_mhz", to_mhz(sb.delta_plus)},
                {"delta_minus_mhz", to_mhz(sb.delta_minus)},
                {"amplitude_ratio", sb.amplitude_ratio},
                {"rate_ratio", sb.rate_ratio}}}};
  c.out.write_json("analytic_report.json", doc, "analytic", "closed-form rates, dressed spectrum and decay curves");
  c.summary = rates;
}

const std::vector<ScenarioDef> kRegistry = {
    {"evolve", "time evolution from a product state (default: transmon populations under a two-photon drive)",
     presets::kEvolve, presets::kEvolveFast, run_evolve},
    {"steady", "steady state of a single parameter point", presets::kOptimum, presets::kOptimumFast, run_steady},
    {"spectroscopy", "reservoir <N> versus drive frequency, steady and transient", presets::kSpectroscopy,
     presets::kSpectroscopyFast, run_spectroscopy},
    {"coupling-sweep", "steady <N> and Fano factor over (g_r, g_a)", presets::kCoupling, presets::kCouplingFast,
     run_coupling},
    {"threshold-scan", "<N>, Fano factor and reservoir states versus drive for named points", presets::kThreshold,
     presets::kThresholdFast, run_threshold},
    {"wigner", "reservoir Wigner function of a steady state", presets::kWigner, presets::kWignerFast, run_wigner},
    {"optimize", "Nelder-Mead maximisation of emitted power", presets::kOptimize, presets::kOptimizeFast,
     run_optimize},
    {"analytic-report", "closed-form estimates at a parameter point", presets::kAnalytic, "", run_analytic},
    {"appendix-b", "standard versus unity-lowering reservoir interaction", presets::kAppendixB,
     presets::kAppendixBFast, run_appendix_b},
    {"appendix-c", "direct reservoir pumping of a two-level transmon", presets::kAppendixC, presets::kAppendixCFast,
     run_appendix_c},
};

}  // namespace

const std::vector<ScenarioDef>& scenario_registry() { return kRegistry; }

const ScenarioDef* find_scenario(const std::string& name) {
  for (const auto& d : kRegistry)
    if (d.name == name) return &d;
  return nullptr;
}

int run_scenario(const ScenarioDef& def, const RunOptions& opts) {
  const ResolvedRun run = resolve_run(def.preset, def.fast_patch, opts);
  ArtifactWriter out(opts.out);
  ScenarioContext ctx{run, opts, out};
  const auto t0 = std::chrono::steady_clock::now();
  def.run(ctx);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json summary = ctx.summary;
  summary["runtime_seconds"] = seconds;
  summary["truncation_flag"] = ctx.truncation_flag;
  summary["fast"] = opts.fast;
  summary["workers"] = opts.workers;
  out.write_manifest(def.name, run.doc, summary);
  return ctx.truncation_flag ? kExitTruncation : kExitOk;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const InvalidDimension*>(&e) || dynamic_cast<const ShapeError*>(&e))
    return kExitConfig;
  return kExitSolver;
}

}  // namespace maser::tools
