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

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "blockade/cli.hpp"

namespace {

const char* kDefaults = R"(
Config file (JSON): {"scenario": ..., "parameters": {...}, "output_path": ..., "seed": 0, "json_mirror": false}
Unknown keys are rejected. Parameter defaults:
  deviation-sweep  scenarios=[idle,sigma_z,sigma_x,inter_qubit] n_min=2 n_max=6 j2=[0.005,0.01,0.05]
                   j1=1 bz=0.3 bx=0.3 jxy=0.3 t_points=20 (t_grid=[...] overrides) slope_h=1e-4
  gate-fidelity    j1=1 j2=[0.05] x1_max=0.5 tau=[0.1,0.2,0.4] naive=false calibrate_phase=true
  josephson-map    n_boxes=8 c_g=0.5 c_j=0.5 c_c=0.01 gate_charges=[0.5,...] units=normalized xy_max=0.5
  blockade-check   cases=[{kind,n_logical,m,couplings}] (default: single_spin n=3 [1];
                   dual_rail n=2 m=2 [1,0.05]; dual_rail n=2 m=2 [1,0.05,0.01])
Exit codes: 0 ok, 1 config error, 2 numerical invariant violated.
)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-dynamics tools for blockade-encoded spin chains"};
  app.footer(kDefaults);
  app.require_subcommand(1);

  std::string config_path, out_path;
  int jobs = 1;
  std::uint64_t seed = 0;
  bool naive = false;
  for (const auto& name : blockade::cli::subcommands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out_path, "CSV output path (default: config output_path, else stdout)");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "seed recorded with the run");
    if (name == "gate-fidelity") sub->add_flag("--naive", naive, "compile pulses as if J2 were zero");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  const std::string scenario = app.get_subcommands().front()->get_name();
  try {
    auto cfg = config_path.empty() ? blockade::cli::parse_config(nlohmann::json::object(), scenario)
                                   : blockade::cli::load_config(config_path, scenario);
    if (!out_path.empty()) cfg.output_path = out_path;
    if (seed != 0) cfg.seed = seed;
    cfg.jobs = jobs;
    cfg.naive = naive;
    const auto out = blockade::cli::run(cfg);
    for (const auto& w : out.warnings) std::cerr << "warning: " << w << '\n';
    blockade::cli::emit(cfg, out, std::cout);
  } catch (const blockade::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const blockade::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
