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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

#include "blockade/blockade.hpp"
#include "../oracles.hpp"

#ifndef BLOCKADE_CLI_PATH
#error "BLOCKADE_CLI_PATH must point at the built CLI"
#endif

namespace {

using namespace blockade;

// Pinned tolerances.
constexpr double kBoundSlack = 1e-9;
constexpr double kSlopeRatioTol = 1e-6;
constexpr double kSlopeSpreadTol = 0.05;
constexpr double kReducedFullTol = 1e-9;
constexpr double kFidelityTol = 1e-9;
constexpr double kLeakageTol = 1e-10;
constexpr double kPhaseTol = 1e-8;
constexpr double kNaiveFactor = 100.0;
constexpr double kCompositeTol = 1e-12;
constexpr double kCancelTol = 1e-14;
constexpr double kSigmaZTol = 1e-8;
constexpr double kDecayBand = 0.05;
constexpr double kInverseIdentityTol = 1e-12;
constexpr double kTwoBoxTol = 1e-16;
constexpr double kExpmTol = 1e-10;
constexpr double kNormTol = 1e-10;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome bound_dominance() {
  const Scenario all[] = {Scenario::Idle, Scenario::SigmaZ, Scenario::SigmaX, Scenario::InterQubit};
  Outcome o;
  double worst = std::numeric_limits<double>::infinity();
  int points = 0;
  for (auto s : all)
    for (int n = minimum_qubits(s); n <= 6; ++n)
      for (double j2 : {0.005, 0.01, 0.05})
        for (double t : default_t_grid(n, j2, 20)) {
          const auto r = scenario_deviation(s, n, j2, t);
          worst = std::min(worst, r.exact_phase_opt - r.lower_bound);
          if (r.exact_phase_opt < r.lower_bound - kBoundSlack) o.pass = false;
          ++points;
        }
  o.detail = std::to_string(points) + " points, min(exact - bound) = " + fmt("%.3e", worst);
  return o;
}

Outcome slope_scaling() {
  Outcome o;
  double worst_ratio = 0.0;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0, mean = 0.0;
  const double j2 = 0.01;
  for (int n = 3; n <= 8; ++n) {
    const double s1 = deviation_slope(Scenario::Idle, n, j2);
    const double s2 = deviation_slope(Scenario::Idle, n, 2 * j2);
    worst_ratio = std::max(worst_ratio, std::abs(s2 / s1 - 2.0) / 2.0);
    const double per_n = s1 / n;
    lo = std::min(lo, per_n);
    hi = std::max(hi, per_n);
    mean += per_n / 6.0;
  }
  const double spread = (hi - lo) / mean;
  const bool a = worst_ratio <= kSlopeRatioTol, b = spread <= kSlopeSpreadTol;
  o.pass = a && b;
  o.detail = std::string("(a) ") + (a ? "ok" : "FAIL") + fmt(" max rel dev %.2e", worst_ratio) + "; (b) " +
             (b ? "ok" : "FAIL") + fmt(" slope/n spread %.3f", spread) + " (exact slope is J2(n-1))";
  return o;
}

Outcome reduced_vs_full() {
  const Scenario all[] = {Scenario::Idle, Scenario::SigmaZ, Scenario::SigmaX, Scenario::InterQubit};
  Outcome o;
  double worst = 0.0;
  for (auto s : all)
    for (int n = minimum_qubits(s); n <= 4; ++n)
      for (double j2 : {0.01, 0.05}) {
        const auto ts = default_t_grid(n, j2, 20);
        const auto full = full_chain_deviations(s, n, j2, ts);
        for (std::size_t k = 0; k < ts.size(); ++k) {
          const auto red = scenario_deviation(s, n, j2, ts[k]);
          worst = std::max({worst, std::abs(red.exact_raw - full[k].exact_raw),
                            std::abs(red.exact_phase_opt - full[k].exact_phase_opt)});
        }
      }
  o.pass = worst <= kReducedFullTol;
  o.detail = fmt("max |reduced - full| = %.3e", worst);
  return o;
}

Outcome cphase_exactness() {
  Outcome o;
  const ChainSpec spec{10, 1.0, 0.05, 0.5};
  const auto layout = LogicalLayout::dual_rail(2, 2);
  double worst_f = 0.0, worst_l = 0.0, worst_p = 0.0;
  for (double tau : {0.1, 0.2, 0.4}) {
    const auto g = simulate_gate(spec, layout, compile_cphase(spec, tau));
    // Under exp(-iHt) the marked state |01>_L gains -4 J1 tau.
    const double dphi = std::abs(wrap_pi(g.phase_phi + 4.0 * spec.j1 * tau));
    worst_f = std::max(worst_f, 1.0 - g.fidelity);
    worst_l = std::max(worst_l, g.leakage);
    worst_p = std::max(worst_p, dphi);
  }
  o.pass = worst_f <= kFidelityTol && worst_l <= kLeakageTol && worst_p <= kPhaseTol;
  o.detail = fmt("1-F %.2e", worst_f) + fmt(", leakage %.2e", worst_l) + fmt(", |phi + 4 J1 tau| %.2e", worst_p);
  return o;
}

Outcome compensation_necessity() {
  Outcome o;
  const ChainSpec spec{10, 1.0, 0.05, 0.5};
  const auto layout = LogicalLayout::dual_rail(2, 2);
  CphaseOptions naive;
  naive.naive = true;
  const double tau = 0.2;
  const auto good = compile_cphase_program(spec, tau);
  const auto bad = compile_cphase_program(spec, tau, naive);
  const double d_good = 1.0 - simulate_gate(spec, layout, good.schedule, 0, cphase_matrix(good.nominal_phase)).fidelity;
  const double d_bad = 1.0 - simulate_gate(spec, layout, bad.schedule, 0, cphase_matrix(bad.nominal_phase)).fidelity;
  o.pass = d_bad > 0.0 && d_bad >= kNaiveFactor * d_good;
  o.detail = fmt("naive deficit %.3e", d_bad) + fmt(", compensated deficit %.3e", d_good);
  return o;
}

Outcome composite_identity() {
  Outcome o;
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> ux(0.01, 2.0), uj(-0.2, 0.2);
  Matrix2c target;
  target << 0.0, cplx(0, -1), cplx(0, -1), 0.0;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double x1 = ux(rng), j2 = uj(rng);
    worst = std::max(worst, (composite_rotation(solve_pulse_parameters(x1, 2.0 * j2)) - target).cwiseAbs().maxCoeff());
  }
  o.pass = worst <= kCompositeTol;
  o.detail = fmt("50 pairs, max entry error %.2e", worst);
  return o;
}

Outcome blockade_cancellation() {
  Outcome o;
  double fig1 = 0.0;
  for (int n = 2; n <= 8; ++n) fig1 = std::max(fig1, verify_blockade_cancellation(LogicalLayout::single_spin(n), {1.0}));
  const double fig2 = verify_blockade_cancellation(LogicalLayout::dual_rail(2, 2), {1.0, 0.05});
  const double j3 = verify_blockade_cancellation(LogicalLayout::dual_rail(2, 2), {1.0, 0.05, 0.01});
  o.pass = fig1 < kCancelTol && fig2 < kCancelTol && j3 > 0.0;
  o.detail = fmt("single-spin %.1e", fig1) + fmt(", dual-rail %.1e", fig2) + fmt(", with J3 %.3e", j3);
  return o;
}

Outcome sigma_z_identity() {
  Outcome o;
  const ChainSpec spec{10, 1.0, 0.05, 0.5};
  const auto layout = LogicalLayout::dual_rail(2, 2);
  double worst = 0.0;
  for (double phi : {0.3, 0.7, 1.5}) {
    Matrix4c t = Matrix4c::Zero();
    for (int i = 0; i < 4; ++i) t(i, i) = std::polar(1.0, phi) * std::polar(1.0, (i >> 1) ? -phi : phi);
    t *= std::conj(t(0, 0));  // compare up to global phase
    const auto g = simulate_gate(spec, layout, logical_sigma_z(spec, layout, 0, phi));
    worst = std::max(worst, (g.logical_matrix - t).cwiseAbs().maxCoeff());
  }
  o.pass = worst <= kSigmaZTol;
  o.detail = fmt("max entry error %.2e (up to global phase)", worst);
  return o;
}

Outcome josephson_decay() {
  Outcome o;
  JosephsonArraySpec s;
  s.n_boxes = 8;
  s.c_g = 0.5;
  s.c_j = 0.5;
  s.c_c = 0.01;
  const RMatrix c = build_capacitance_matrix(s);
  const RMatrix inv = invert_capacitance(c);
  const double eps = s.epsilon();
  double worst_ratio = 0.0;
  for (int i = 1; i <= 6; ++i)
    for (int k = 0; i + k + 1 < 8; ++k)
      worst_ratio = std::max(worst_ratio, std::abs(std::abs(inv(i, i + k + 1) / inv(i, i + k)) / eps - 1.0));
  const double id_err = (c * inv - RMatrix::Identity(8, 8)).cwiseAbs().maxCoeff();
  JosephsonArraySpec two;
  two.n_boxes = 2;
  two.c_g = 0.5;
  two.c_j = 0.5;
  two.c_c = 0.1;
  const double hand = 0.25 * (0.1 / 1.2);  // (2e)^2/4 * adj(C)_01 / det(C), units (2e)^2/C0
  const double j1 = josephson_map(two).couplings_by_order.at(1);
  o.pass = worst_ratio <= kDecayBand && id_err <= kInverseIdentityTol && std::abs(j1 - hand) <= kTwoBoxTol;
  o.detail = fmt("max |r/eps - 1| %.4f", worst_ratio) + fmt(", |C C^-1 - I| %.1e", id_err) +
             fmt(", two-box |J1 - hand| %.1e", std::abs(j1 - hand));
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome kernel_oracles() {
  Outcome o;
  std::mt19937_64 rng(424242);
  double expm_err = 0.0, norm_err = 0.0;
  for (int k = 0; k < 20; ++k) {
    const CMatrix h = oracle::random_hermitian(8, rng);
    expm_err = std::max(expm_err, max_abs_entry(expm_unitary(h, 1.0).matrix - oracle::taylor_propagator(h, 1.0)));
    const CMatrix a = oracle::random_matrix(16, rng);
    norm_err = std::max(norm_err, std::abs(spectral_norm(a) - oracle::power_norm(a)));
  }

  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "blockade_acceptance";
  fs::create_directories(dir);
  const fs::path cfg = dir / "sweep.json";
  std::ofstream(cfg) << R"({"scenario": "deviation-sweep", "parameters": {"n_max": 5, "t_points": 8}, "json_mirror": true})";
  bool same = true;
  std::string first;
  for (int run = 0; run < 3; ++run) {
    const fs::path out = dir / ("run" + std::to_string(run) + ".csv");
    const std::string cmd = std::string("\"") + BLOCKADE_CLI_PATH + "\" deviation-sweep --config \"" + cfg.string() +
                            "\" --out \"" + out.string() + "\" --jobs " + std::to_string(1 + run) + " --seed 7";
    if (std::system(cmd.c_str()) != 0) return {false, "CLI run failed: " + cmd};
    const std::string bytes = slurp(out) + slurp(out.string() + ".slopes.csv") + slurp(out.string() + ".json");
    if (run == 0) first = bytes;
    else same = same && bytes == first && !bytes.empty();
  }
  o.pass = expm_err <= kExpmTol && norm_err <= kNormTol && same;
  o.detail = fmt("expm %.1e", expm_err) + fmt(", norm %.1e", norm_err) +
             ", CLI reruns " + (same ? "byte-identical" : "DIFFER");
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 bound dominance", bound_dominance},
      {"2 deviation slope scaling", slope_scaling},
      {"3 reduced vs full chain", reduced_vs_full},
      {"4 CPHASE exactness", cphase_exactness},
      {"5 compensation necessity", compensation_necessity},
      {"6 composite rotation", composite_identity},
      {"7 blockade cancellation", blockade_cancellation},
      {"8 sigma-z from CPHASE", sigma_z_identity},
      {"9 Josephson decay", josephson_decay},
      {"10 kernel oracles + CLI determinism", kernel_oracles},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %-38s %s\n", r.pass ? "PASS" : "FAIL", name, r.detail.c_str());
    failed += !r.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
