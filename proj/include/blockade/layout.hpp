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

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "blockade/error.hpp"

namespace blockade {

enum class Encoding {
  SingleSpin,  ///< one physical spin per logical qubit
  DualRail,    ///< |0>_L = |01>, |1>_L = |10> on a spin pair
};

struct BlockadeBlock {
  std::vector<int> sites;   ///< 1-based, ascending
  std::vector<int> frozen;  ///< frozen bit per site (0 or 1)
};

/// Assignment of logical qubits and frozen blockade spins to chain sites.
struct LogicalLayout {
  int n_spins = 0;
  int n_logical = 0;
  int blockade_width = 1;
  Encoding encoding = Encoding::SingleSpin;
  std::vector<std::vector<int>> qubit_sites;
  std::vector<BlockadeBlock> blockades;

  /// One spin per qubit separated by single blockades frozen in an
  /// alternating |0>,|1>,|0>,... pattern: 2n+1 spins, qubit i on site 2i.
  static LogicalLayout single_spin(int n_logical) {
    if (n_logical < 1) throw InvalidArgument("single_spin layout: need at least one qubit");
    LogicalLayout l;
    l.n_spins = 2 * n_logical + 1;
    l.n_logical = n_logical;
    l.blockade_width = 1;
    l.encoding = Encoding::SingleSpin;
    for (int k = 0; k <= n_logical; ++k) l.blockades.push_back({{2 * k + 1}, {k % 2}});
    for (int i = 1; i <= n_logical; ++i) l.qubit_sites.push_back({2 * i});
    l.validate();
    return l;
  }

  /// Spin-pair qubits with blocks of m blockades, all frozen |0>, between
  /// neighbouring qubits and at both chain ends.
  static LogicalLayout dual_rail(int n_logical, int m) {
    if (n_logical < 1 || m < 1) throw InvalidArgument("dual_rail layout: need n_logical >= 1 and m >= 1");
    LogicalLayout l;
    l.n_logical = n_logical;
    l.blockade_width = m;
    l.encoding = Encoding::DualRail;
    int site = 1;
    auto push_block = [&] {
      BlockadeBlock b;
      for (int k = 0; k < m; ++k) {
        b.sites.push_back(site++);
        b.frozen.push_back(0);
      }
      l.blockades.push_back(std::move(b));
    };
    push_block();
    for (int q = 0; q < n_logical; ++q) {
      l.qubit_sites.push_back({site, site + 1});
      site += 2;
      push_block();
    }
    l.n_spins = site - 1;
    l.validate();
    return l;
  }

  void validate() const {
    std::vector<int> seen(static_cast<std::size_t>(n_spins + 1), 0);
    auto mark = [&](int s) {
      if (s < 1 || s > n_spins) throw InvalidArgument("LogicalLayout: site out of range");
      if (seen[static_cast<std::size_t>(s)]++) throw InvalidArgument("LogicalLayout: overlapping sites");
    };
    if (static_cast<int>(qubit_sites.size()) != n_logical) throw InvalidArgument("LogicalLayout: qubit count mismatch");
    const std::size_t per_qubit = encoding == Encoding::DualRail ? 2 : 1;
    for (const auto& q : qubit_sites) {
      if (q.size() != per_qubit) throw InvalidArgument("LogicalLayout: wrong number of sites per qubit");
      for (int s : q) mark(s);
    }
    for (const auto& b : blockades) {
      if (b.sites.size() != b.frozen.size()) throw InvalidArgument("LogicalLayout: blockade pattern size mismatch");
      for (int f : b.frozen)
        if (f != 0 && f != 1) throw InvalidArgument("LogicalLayout: frozen state must be 0 or 1");
      for (int s : b.sites) mark(s);
    }
    for (int s = 1; s <= n_spins; ++s)
      if (!seen[static_cast<std::size_t>(s)]) throw InvalidArgument("LogicalLayout: sites do not cover the chain");
  }

  std::optional<int> frozen_bit(int site) const {
    for (const auto& b : blockades)
      for (std::size_t k = 0; k < b.sites.size(); ++k)
        if (b.sites[k] == site) return b.frozen[k];
    return std::nullopt;
  }

  /// Per-site bits (index 0 = site 1) for a logical computational basis state;
  /// `logical_bits[q]` is the value of qubit q.
  std::vector<int> physical_bits(const std::vector<int>& logical_bits) const {
    if (static_cast<int>(logical_bits.size()) != n_logical) throw InvalidArgument("physical_bits: wrong qubit count");
    std::vector<int> bits(static_cast<std::size_t>(n_spins), 0);
    for (const auto& b : blockades)
      for (std::size_t k = 0; k < b.sites.size(); ++k) bits[static_cast<std::size_t>(b.sites[k] - 1)] = b.frozen[k];
    for (int q = 0; q < n_logical; ++q) {
      const auto& s = qubit_sites[static_cast<std::size_t>(q)];
      const int v = logical_bits[static_cast<std::size_t>(q)];
      if (encoding == Encoding::SingleSpin) {
        bits[static_cast<std::size_t>(s[0] - 1)] = v;
      } else {
        bits[static_cast<std::size_t>(s[0] - 1)] = v;      // |1>_L = |10>
        bits[static_cast<std::size_t>(s[1] - 1)] = 1 - v;  // |0>_L = |01>
      }
    }
    return bits;
  }
};

}  // namespace blockade
