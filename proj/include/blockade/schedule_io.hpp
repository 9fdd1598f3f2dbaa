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

#include <set>
#include <string>

#include "blockade/chain.hpp"
#include "blockade/error.hpp"

// Schedule interchange:
//   {"n_spins": N, "segments": [{"duration": t, "bx": [...], "bz": [...], "jxy": [...]}, ...]}

namespace blockade {

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& allowed, const char* where) {
  if (!j.is_object()) throw InvalidArgument(std::string(where) + ": expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw InvalidArgument(std::string(where) + ": unknown key '" + k + "'");
}

}  // namespace detail

inline nlohmann::json schedule_to_json(const ControlSchedule& s, int n_spins) {
  s.validate(n_spins);
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& seg : s.segments)
    segs.push_back({{"duration", seg.duration}, {"bx", seg.bx}, {"bz", seg.bz}, {"jxy", seg.jxy}});
  return {{"n_spins", n_spins}, {"segments", segs}};
}

/// Returns the schedule and writes the chain length to `n_spins`.
inline ControlSchedule schedule_from_json(const nlohmann::json& j, int& n_spins) {
  try {
    detail::reject_unknown_keys(j, {"n_spins", "segments"}, "schedule");
    n_spins = j.at("n_spins").get<int>();
    if (n_spins < 2) throw InvalidArgument("schedule: n_spins must be >= 2");
    ControlSchedule s;
    for (const auto& js : j.at("segments")) {
      detail::reject_unknown_keys(js, {"duration", "bx", "bz", "jxy"}, "segment");
      ControlSegment seg = ControlSegment::idle(n_spins, js.at("duration").get<double>());
      if (js.contains("bx")) seg.bx = js["bx"].get<std::vector<double>>();
      if (js.contains("bz")) seg.bz = js["bz"].get<std::vector<double>>();
      if (js.contains("jxy")) seg.jxy = js["jxy"].get<std::vector<double>>();
      s.segments.push_back(std::move(seg));
    }
    s.validate(n_spins);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("schedule: ") + e.what());
  }
}

}  // namespace blockade
