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

#include "ghz/report.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <memory>

#include "ghz/error.hpp"
#include "json.hpp"

namespace ghz {
namespace {

using nlohmann::ordered_json;

ordered_json row_json(const SweepRow& r) {
  ordered_json j;
  j["b"] = r.point.b;
  j["gkl_over_gr"] = r.point.gkl_over_gr;
  j["status"] = r.status;
  if (!r.ok) {
    j["detail"] = r.detail;
    return j;
  }
  j["fidelity"] = r.fidelity;
  j["fidelity_phase_opt"] = r.fidelity_phase_opt;
  j["optimal_phase_rad"] = r.optimal_phase;
  j["max_f_pop"] = r.max_f_population;
  j["t1_s"] = r.t1;
  j["tau_s"] = r.tau;
  j["dt_step1_s"] = r.dt_step1;
  j["dt_step2_s"] = r.dt_step2;
  return j;
}

ordered_json header(std::string_view command, std::string_view config_text) {
  ordered_json j;
  j["tool"] = "ghzsim";
  j["version"] = GHZSIM_VERSION;
  j["command"] = command;
  j["config"] = config_text;
  j["config_hash"] = git_blob_sha1(config_text);
  return j;
}

}  // namespace

std::string git_blob_sha1(std::string_view content) {
  const std::string prefix = "blob " + std::to_string(content.size()) + std::string(1, '\0');
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  require(ctx && EVP_DigestInit_ex(ctx.get(), EVP_sha1(), nullptr) == 1 &&
              EVP_DigestUpdate(ctx.get(), prefix.data(), prefix.size()) == 1 &&
              EVP_DigestUpdate(ctx.get(), content.data(), content.size()) == 1 &&
              EVP_DigestFinal_ex(ctx.get(), digest, &len) == 1,
          ErrorKind::invariant, "SHA-1 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const SweepRow& r : rows) {
    out += format_value(r.point.b) + ',' + format_value(r.point.gkl_over_gr) + ',' +
           format_value(r.fidelity) + ',' + format_value(r.fidelity_phase_opt) + ',' +
           format_value(r.max_f_population) + ',' + format_value(r.t1 * 1e9) + ',' +
           format_value(r.tau * 1e9) + ',' + r.status + '\n';
  }
  return out;
}

std::string sweep_envelope(const SweepResult& result, std::string_view config_text) {
  ordered_json j = header("sweep", config_text);
  const SweepMetadata& m = result.metadata;
  j["metadata"] = {{"cutoffs", m.cutoffs},
                   {"dt_step1_s", {m.dt_step1_min, m.dt_step1_max}},
                   {"dt_step2_s", {m.dt_step2_min, m.dt_step2_max}}};
  ordered_json rows = ordered_json::array();
  for (const SweepRow& r : result.rows) rows.push_back(row_json(r));
  j["rows"] = std::move(rows);
  ordered_json timing = ordered_json::array();
  for (const SweepRow& r : result.rows) timing.push_back(r.wall_time);
  j["diagnostics"] = {{"workers", m.workers}, {"wall_time_s", std::move(timing)}};
  return j.dump(2) + "\n";
}

std::string run_envelope(const SweepRow& row, const Diagnostics& d, std::string_view config_text) {
  ordered_json j = header("run", config_text);
  j["metadata"] = {{"dt_step1_s", d.dt_step1}, {"dt_step2_s", d.dt_step2}};
  j["rows"] = ordered_json::array({row_json(row)});
  j["diagnostics"] = {{"b", d.b},
                      {"p_leak", d.p_leak},
                      {"max_f_population", d.max_f_population},
                      {"t1_s", d.t1},
                      {"t2_s", d.t2},
                      {"tau_s", d.tau},
                      {"t_cav_s", d.t_cav},
                      {"tau_much_less_than_qutrit_lifetimes", d.flags.tau_vs_qutrit},
                      {"tau_much_less_than_t_cav", d.flags.tau_vs_cavity},
                      {"crosstalk_far_detuned", d.flags.crosstalk_detuned},
                      {"wall_time_s", row.wall_time}};
  return j.dump(2) + "\n";
}

}  // namespace ghz
