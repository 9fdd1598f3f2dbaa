// Copyright 2026 The Blockade Chain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "blockade/deviation.hpp"
#include "blockade/encoded_gates.hpp"
#include "blockade/error.hpp"
#include "blockade/josephson.hpp"

namespace blockade::cli {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s{"deviation-sweep", "gate-fidelity", "josephson-map", "blockade-check"};
  return s;
}

struct RunConfig {
  std::string scenario;
  json parameters = json::object();
  std::optional<std::string> output_path;
  std::uint64_t seed = 0;
  bool json_mirror = false;
  int jobs = 1;
  bool naive = false;
};

/// Strict view of a parameter object: every key must be read exactly once
/// through get(), finish() rejects anything left over.
class Params {
 public:
  Params(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw InvalidArgument(where_ + ": expected an object");
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    used_.insert(key);
    if (!j_.contains(key)) return fallback;
    try {
      T v = j_.at(key).get<T>();
      check_finite(key, v);
      return v;
    } catch (const json::exception& e) {
      throw InvalidArgument(where_ + "." + key + ": " + e.what());
    }
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    used_.insert(key);
    return j_.at(key);
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!used_.count(k)) throw InvalidArgument(where_ + ": unknown key '" + k + "'");
  }

 private:
  template <class T>
  void check_finite(const std::string& key, const T& v) const {
    if constexpr (std::is_floating_point_v<T>) {
      if (!std::isfinite(v)) throw InvalidArgument(where_ + "." + key + ": must be finite");
    } else if constexpr (std::is_same_v<T, std::vector<double>>) {
      for (double x : v)
        if (!std::isfinite(x)) throw InvalidArgument(where_ + "." + key + ": entries must be finite");
    }
  }

  const json& j_;
  std::string where_;
  std::set<std::string> used_;
};

inline RunConfig parse_config(const json& j, const std::string& scenario) {
  RunConfig c;
  c.scenario = scenario;
  Params p(j, "config");
  const auto declared = p.get<std::string>("scenario", scenario);
  if (declared != scenario)
    throw InvalidArgument("config: file is for '" + declared + "', not '" + scenario + "'");
  if (p.has("parameters")) c.parameters = p.raw("parameters");
  if (!c.parameters.is_object()) throw InvalidArgument("config.parameters: expected an object");
  if (p.has("output_path")) c.output_path = p.get<std::string>("output_path", "");
  c.seed = p.get<std::uint64_t>("seed", 0);
  c.json_mirror = p.get<bool>("json_mirror", false);
  p.finish();
  return c;
}

inline RunConfig load_config(const std::string& path, const std::string& scenario) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument("config '" + path + "': " + e.what());
  }
  return parse_config(j, scenario);
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

using Cell = std::variant<std::string, double, long long>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

inline std::string format_cell(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const double v = std::get<double>(c);
  if (v == 0.0) return "0";  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_cell(r[i]);
    os << '\n';
  }
}

inline json table_to_json(const Table& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json o = json::object();
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (const auto* s = std::get_if<std::string>(&r[i])) o[t.header[i]] = *s;
      else if (const auto* n = std::get_if<long long>(&r[i])) o[t.header[i]] = *n;
      else o[t.header[i]] = std::stod(format_cell(r[i]));
    }
    rows.push_back(std::move(o));
  }
  return rows;
}

struct RunOutput {
  Table table;
  std::optional<Table> slopes;
  std::vector<std::string> warnings;
};

// ---------------------------------------------------------------------------
// Worker pool
// ---------------------------------------------------------------------------

/// fn(i) for i in [0, n) on `jobs` threads; results land at their index so
/// the output never depends on scheduling.
template <class R>
std::vector<R> parallel_map(std::size_t n, int jobs, const std::function<R(std::size_t)>& fn) {
  std::vector<R> out(n);
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::size_t err_index = n;
  std::mutex m;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (i < err_index) err_index = i, err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);  // lowest failing index, as a serial run would report
  return out;
}

// ---------------------------------------------------------------------------
// deviation-sweep
// ---------------------------------------------------------------------------

inline RunOutput run_deviation_sweep(const RunConfig& cfg) {
  Params p(cfg.parameters, "parameters");
  const auto names = p.get<std::vector<std::string>>("scenarios", {"idle", "sigma_z", "sigma_x", "inter_qubit"});
  const int n_min = p.get<int>("n_min", 2);
  const int n_max = p.get<int>("n_max", 6);
  const auto j2s = p.get<std::vector<double>>("j2", {0.005, 0.01, 0.05});
  ScenarioOptions o;
  o.j1 = p.get<double>("j1", 1.0);
  o.bz = p.get<double>("bz", o.bz);
  o.bx = p.get<double>("bx", o.bx);
  o.jxy = p.get<double>("jxy", o.jxy);
  const int t_points = p.get<int>("t_points", 20);
  const std::optional<std::vector<double>> t_grid =
      p.has("t_grid") ? std::optional(p.get<std::vector<double>>("t_grid", {})) : std::nullopt;
  const double slope_h = p.get<double>("slope_h", 1e-4);
  p.finish();

  if (names.empty()) throw InvalidArgument("deviation-sweep: no scenarios");
  if (n_min < 2 || n_max < n_min || n_max > kMaxEnumeratedQubits)
    throw InvalidArgument("deviation-sweep: need 2 <= n_min <= n_max <= " + std::to_string(kMaxEnumeratedQubits));
  if (j2s.empty()) throw InvalidArgument("deviation-sweep: empty j2 list");
  if (t_grid && t_grid->empty()) throw InvalidArgument("deviation-sweep: empty t grid");
  if (!t_grid && t_points < 1) throw InvalidArgument("deviation-sweep: t_points must be >= 1");
  if (t_grid)
    for (double t : *t_grid)
      if (t < 0.0) throw InvalidArgument("deviation-sweep: t grid entries must be >= 0");
  if (!(slope_h > 0.0)) throw InvalidArgument("deviation-sweep: slope_h must be > 0");

  struct Point {
    Scenario s;
    int n;
    double j2;
  };
  std::vector<Point> points;
  for (const auto& name : names) {
    const Scenario s = scenario_from_string(name);
    for (double j2 : j2s)
      for (int n = std::max(n_min, minimum_qubits(s)); n <= n_max; ++n) points.push_back({s, n, j2});
  }

  struct PointResult {
    std::vector<ScenarioResult> rows;
    double slope = 0.0;
  };
  auto results = parallel_map<PointResult>(points.size(), cfg.jobs, [&](std::size_t i) {
    const auto& pt = points[i];
    PointResult r;
    for (double t : t_grid.value_or(default_t_grid(pt.n, pt.j2, t_points)))
      r.rows.push_back(scenario_deviation(pt.s, pt.n, pt.j2, t, o));
    r.slope = deviation_slope(pt.s, pt.n, pt.j2, slope_h, o);
    return r;
  });

  RunOutput out;
  out.table.header = {"scenario", "n", "j1", "j2", "t", "exact_raw", "exact_phase_opt", "lower_bound", "bound_holds"};
  Table slopes{{"scenario", "n", "j1", "j2", "slope_h", "slope", "slope_over_n"}, {}};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    for (const auto& r : results[i].rows)
      out.table.rows.push_back({to_string(pt.s), static_cast<long long>(pt.n), o.j1, pt.j2, r.t, r.exact_raw,
                                r.exact_phase_opt, r.lower_bound, std::string(r.bound_holds() ? "pass" : "fail")});
    slopes.rows.push_back({to_string(pt.s), static_cast<long long>(pt.n), o.j1, pt.j2, slope_h, results[i].slope,
                           results[i].slope / pt.n});
  }
  out.slopes = std::move(slopes);
  return out;
}

// ---------------------------------------------------------------------------
// gate-fidelity
// ---------------------------------------------------------------------------

inline RunOutput run_gate_fidelity(const RunConfig& cfg) {
  Params p(cfg.parameters, "parameters");
  const double j1 = p.get<double>("j1", 1.0);
  const auto j2s = p.get<std::vector<double>>("j2", {0.05});
  const double x1_max = p.get<double>("x1_max", 0.5);
  const auto taus = p.get<std::vector<double>>("tau", {0.1, 0.2, 0.4});
  const bool naive = p.get<bool>("naive", false) || cfg.naive;
  const bool calibrate = p.get<bool>("calibrate_phase", true);
  p.finish();
  if (j2s.empty() || taus.empty()) throw InvalidArgument("gate-fidelity: empty j2 or tau list");
  for (double t : taus)
    if (t < 0.0) throw InvalidArgument("gate-fidelity: tau must be >= 0");

  struct Point {
    double j2, tau;
  };
  std::vector<Point> points;
  for (double j2 : j2s)
    for (double tau : taus) points.push_back({j2, tau});

  RunOutput out;
  const ChainSpec probe{10, j1, j2s.front(), x1_max};
  probe.validate();
  out.warnings = probe.warnings();

  struct Row {
    GateReport g;
    double nominal = 0.0;
  };
  auto rows = parallel_map<Row>(points.size(), cfg.jobs, [&](std::size_t i) {
    const ChainSpec spec{10, j1, points[i].j2, x1_max};
    CphaseOptions co;
    co.naive = naive;
    co.calibrate_phase = calibrate;
    const auto prog = compile_cphase_program(spec, points[i].tau, co);
    const auto g = simulate_gate(spec, LogicalLayout::dual_rail(2, 2), prog.schedule, 0,
                                 cphase_matrix(prog.nominal_phase));
    return Row{g, prog.nominal_phase};
  });

  out.table.header = {"j1",   "j2",      "x1_max",     "tau",           "naive",  "fidelity",
                      "fidelity_deficit", "leakage", "phi", "phi_nominal", "phase_residual"};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& r = rows[i];
    out.table.rows.push_back({j1, points[i].j2, x1_max, points[i].tau, static_cast<long long>(naive),
                              r.g.fidelity, 1.0 - r.g.fidelity, r.g.leakage, r.g.phase_phi, r.nominal,
                              wrap_pi(r.g.phase_phi - r.nominal)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// josephson-map
// ---------------------------------------------------------------------------

inline RunOutput run_josephson_map(const RunConfig& cfg) {
  Params p(cfg.parameters, "parameters");
  JosephsonArraySpec s;
  s.n_boxes = p.get<int>("n_boxes", s.n_boxes);
  s.c_g = p.get<double>("c_g", s.c_g);
  s.c_j = p.get<double>("c_j", s.c_j);
  s.c_c = p.get<double>("c_c", s.c_c);
  s.gate_charges = p.get<std::vector<double>>("gate_charges", {});
  const auto units = p.get<std::string>("units", "normalized");
  s.xy_max = p.get<double>("xy_max", s.xy_max);
  p.finish();
  if (units == "si") s.units = ChargeUnits::SI;
  else if (units != "normalized") throw InvalidArgument("josephson-map: units must be 'normalized' or 'si'");

  const auto r = josephson_map(s);
  RunOutput out;
  out.warnings = r.warnings;
  out.table.header = {"n_boxes", "c_g", "c_j", "c_c", "epsilon", "units", "quantity", "i", "j", "value"};
  auto row = [&](const std::string& q, long long i, long long j, double v) {
    out.table.rows.push_back({static_cast<long long>(s.n_boxes), s.c_g, s.c_j, s.c_c, s.epsilon(), units, q, i, j, v});
  };
  const int n = s.n_boxes;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) row("C", i, j, r.c_matrix(i, j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) row("C_inv", i, j, r.c_inverse(i, j));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) row("J", i, j, r.coupling_matrix(i, j));
  for (const auto& [k, v] : r.couplings_by_order) row("J_order", k, -1, v);
  for (int i = 0; i < n; ++i) row("linear_field", i, -1, r.linear_fields[static_cast<std::size_t>(i)]);
  if (r.decay) {
    for (const auto& d : r.decay->ratios) row("decay_ratio", d.row, d.order, d.ratio);
    row("decay_band_lower", -1, -1, r.decay->lower);
    row("decay_band_upper", -1, -1, r.decay->upper);
    row("decay_pass", -1, -1, r.decay->passed() ? 1.0 : 0.0);
    row("decay_out_of_regime", -1, -1, r.decay->status == DecayStatus::OutOfRegime ? 1.0 : 0.0);
  }
  row("residual_bound", -1, -1, r.residual_bound);
  row("chain_n_spins", -1, -1, r.effective_chain.n_spins);
  row("chain_j1", -1, -1, r.effective_chain.j1);
  row("chain_j2", -1, -1, r.effective_chain.j2);
  row("chain_x1_max", -1, -1, r.effective_chain.x1_max);
  return out;
}

// ---------------------------------------------------------------------------
// blockade-check
// ---------------------------------------------------------------------------

inline constexpr double kCancellationTol = 1e-14;

inline RunOutput run_blockade_check(const RunConfig& cfg) {
  Params p(cfg.parameters, "parameters");
  json cases = json::array({
      {{"kind", "single_spin"}, {"n_logical", 3}, {"couplings", {1.0}}},
      {{"kind", "dual_rail"}, {"n_logical", 2}, {"m", 2}, {"couplings", {1.0, 0.05}}},
      {{"kind", "dual_rail"}, {"n_logical", 2}, {"m", 2}, {"couplings", {1.0, 0.05, 0.01}}},
  });
  if (p.has("cases")) cases = p.raw("cases");
  p.finish();
  if (!cases.is_array() || cases.empty()) throw InvalidArgument("blockade-check: cases must be a non-empty list");

  struct Case {
    std::string kind;
    int n_logical, m;
    std::vector<double> couplings;
    LogicalLayout layout;
  };
  std::vector<Case> list;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    Params c(cases[i], "cases[" + std::to_string(i) + "]");
    Case k;
    k.kind = c.get<std::string>("kind", "dual_rail");
    k.n_logical = c.get<int>("n_logical", 2);
    k.m = c.get<int>("m", k.kind == "single_spin" ? 1 : 2);
    k.couplings = c.get<std::vector<double>>("couplings", {1.0});
    c.finish();
    if (k.kind == "single_spin") {
      if (k.m != 1) throw InvalidArgument("blockade-check: single_spin layouts use m = 1");
      k.layout = LogicalLayout::single_spin(k.n_logical);
    } else if (k.kind == "dual_rail") {
      k.layout = LogicalLayout::dual_rail(k.n_logical, k.m);
    } else {
      throw InvalidArgument("blockade-check: kind must be 'single_spin' or 'dual_rail'");
    }
    list.push_back(std::move(k));
  }

  auto res = parallel_map<BlockadeResidual>(list.size(), cfg.jobs, [&](std::size_t i) {
    return blockade_residual(list[i].layout, list[i].couplings);
  });

  RunOutput out;
  out.table.header = {"kind", "n_logical", "m", "n_spins", "couplings", "residual", "frozen_field", "cancelled"};
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& k = list[i];
    std::string cs;
    for (std::size_t j = 0; j < k.couplings.size(); ++j) cs += (j ? ";" : "") + format_cell(k.couplings[j]);
    out.table.rows.push_back({k.kind, static_cast<long long>(k.n_logical), static_cast<long long>(k.m),
                              static_cast<long long>(k.layout.n_spins), cs, res[i].residual, res[i].frozen_field,
                              std::string(res[i].residual < kCancellationTol ? "yes" : "no")});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dispatch and emission
// ---------------------------------------------------------------------------

inline RunOutput run(const RunConfig& cfg) {
  if (cfg.scenario == "deviation-sweep") return run_deviation_sweep(cfg);
  if (cfg.scenario == "gate-fidelity") return run_gate_fidelity(cfg);
  if (cfg.scenario == "josephson-map") return run_josephson_map(cfg);
  if (cfg.scenario == "blockade-check") return run_blockade_check(cfg);
  throw InvalidArgument("unknown subcommand '" + cfg.scenario + "'");
}

inline void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  body(f);
  if (!f) throw InvalidArgument("write failed for '" + path + "'");
}

/// CSV to the output path (stdout when unset); slopes go next to it as
/// <out>.slopes.csv, the optional JSON mirror as <out>.json.
inline void emit(const RunConfig& cfg, const RunOutput& out, std::ostream& stdout_stream) {
  if (!cfg.output_path) {
    write_csv(stdout_stream, out.table);
    if (out.slopes) {
      stdout_stream << '\n';
      write_csv(stdout_stream, *out.slopes);
    }
    return;
  }
  const std::string& base = *cfg.output_path;
  write_file(base, [&](std::ostream& os) { write_csv(os, out.table); });
  if (out.slopes) write_file(base + ".slopes.csv", [&](std::ostream& os) { write_csv(os, *out.slopes); });
  if (cfg.json_mirror) {
    json j{{"scenario", cfg.scenario}, {"rows", table_to_json(out.table)}};
    if (out.slopes) j["slopes"] = table_to_json(*out.slopes);
    write_file(base + ".json", [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  }
}

}  // namespace blockade::cli
