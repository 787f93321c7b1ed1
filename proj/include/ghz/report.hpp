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

// Result emission: fixed-schema CSV and a JSON envelope carrying the config
// echo and its content hash.

#include <span>
#include <string>
#include <string_view>

#include "ghz/protocol.hpp"
#include "ghz/sweep.hpp"

namespace ghz {

inline constexpr std::string_view kCsvHeader =
    "b,gkl_over_gr,fidelity,fidelity_phase_opt,max_f_pop,t1_ns,tau_ns,status";

// SHA-1 of "blob <size>\0<content>", as `git hash-object` computes it.
std::string git_blob_sha1(std::string_view content);

// 12 significant digits; "nan" for NaN.
std::string format_value(double v);

std::string sweep_csv(std::span<const SweepRow> rows);

std::string sweep_envelope(const SweepResult& result, std::string_view config_text);

std::string run_envelope(const SweepRow& row, const Diagnostics& diagnostics,
                         std::string_view config_text);

}  // namespace ghz
