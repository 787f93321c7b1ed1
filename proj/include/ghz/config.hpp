// Copyright 2026 The ghzsim Authors
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

#pragma once

// Sectioned "key = value" run configuration. Dimensioned values need a unit
// suffix; frequencies are linear (Hz ... GHz) and become rad/s in to_setup().

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghz/dynamics.hpp"
#include "ghz/hamiltonian.hpp"
#include "ghz/protocol.hpp"

namespace ghz {

struct RunConfig {
  struct Spectrum {
    double eg_hz = 0.0;
    double fe_hz = 0.0;
  };

  Spectrum step1{5e9, 10e9};
  Spectrum step2{1e9, 12e9};
  std::array<double, 3> cavity_hz{14e9, 9e9, 1e9};
  std::array<double, 3> kappa{1e5, 1e5, 1e5};  // 1/s
  std::array<double, 3> nbar{1.0, 1.0, 1.0};

  double g_r_hz = 200e6;
  std::optional<double> b;
  std::array<double, 3> crosstalk_hz{};               // g_12, g_13, g_23
  std::optional<std::array<double, 4>> capacitances;  // C_1, C_2, C_3, C_sigma in F
  CouplingRatios ratios = CouplingRatios::defaults();

  NoiseModel noise1 = default_noise(Step::one);
  NoiseModel noise2 = default_noise(Step::two);

  double t_d = 0.0;
  double t_b = 0.0;

  std::vector<double> b_values = default_b_grid();
  std::vector<double> gkl_values{0.0, 0.4, 0.6, 0.8, 1.0};
  std::size_t workers = 0;  // 0 = one per hardware thread

  double dt = 0.0;  // 0 = auto
  int points_per_period = 50;
  PhotonNumbers cutoffs{2, 2, 2};
  double max_frequency_hint_hz = 0.0;

  static std::vector<double> default_b_grid();  // 4 to 14 in steps of 0.5

  // Crosstalk in Hz, from the capacitances when those are given.
  std::array<double, 3> effective_crosstalk_hz() const;
};

RunConfig parse_config_text(std::string_view text);
RunConfig parse_config_file(const std::string& path);

// Every setting, in parse_config_text syntax, with values that read back to
// the same doubles.
std::string canonical_text(const RunConfig& cfg);

ProtocolSetup to_setup(const RunConfig& cfg);

}  // namespace ghz
