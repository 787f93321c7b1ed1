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

#include "ghz/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "ghz/error.hpp"

namespace ghz {
namespace {

enum class Dim { none, frequency, time, rate, capacitance };

struct Unit {
  std::string_view name;
  double mul;
  double div;
};

// SI value = number * mul / div; one of mul, div is always 1 so the
// conversion rounds once.
constexpr Unit kFrequencyUnits[] = {{"Hz", 1, 1}, {"kHz", 1e3, 1}, {"MHz", 1e6, 1}, {"GHz", 1e9, 1}};
constexpr Unit kTimeUnits[] = {{"s", 1, 1},     {"ms", 1, 1e3},  {"us", 1, 1e6},
                               {"\xC2\xB5s", 1, 1e6}, {"ns", 1, 1e9}, {"ps", 1, 1e12}};
constexpr Unit kRateUnits[] = {{"/s", 1, 1}, {"/ms", 1e3, 1}, {"/us", 1e6, 1}, {"/ns", 1e9, 1}};
constexpr Unit kCapacitanceUnits[] = {{"F", 1, 1}, {"pF", 1, 1e12}, {"fF", 1, 1e15}, {"aF", 1, 1e18}};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::span<const Unit> units_for(Dim dim) {
  switch (dim) {
    case Dim::frequency: return kFrequencyUnits;
    case Dim::time: return kTimeUnits;
    case Dim::rate: return kRateUnits;
    case Dim::capacitance: return kCapacitanceUnits;
    case Dim::none: break;
  }
  return {};
}

struct Scaled {
  double number;
  Unit unit;
};

Scaled parse_scaled(std::string_view text, Dim dim, bool allow_inf) {
  text = trim(text);
  double number = 0.0;
  std::string_view rest;
  if (allow_inf && text.substr(0, 3) == "inf") {
    number = std::numeric_limits<double>::infinity();
    rest = trim(text.substr(3));
  } else {
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), number);
    if (ec != std::errc() || !std::isfinite(number)) {
      fail(ErrorKind::config, "expected a number, got '" + std::string(text) + "'");
    }
    rest = trim(std::string_view(ptr, text.data() + text.size() - ptr));
  }
  if (rest.substr(0, 2) == "1/") rest.remove_prefix(1);
  if (dim == Dim::none) {
    if (!rest.empty()) fail(ErrorKind::config, "unexpected unit '" + std::string(rest) + "'");
    return {number, {"", 1, 1}};
  }
  if (rest.empty()) fail(ErrorKind::config, "value '" + std::string(text) + "' needs a unit");
  for (const Unit& u : units_for(dim)) {
    if (u.name == rest) return {number, u};
  }
  fail(ErrorKind::config, "unknown unit '" + std::string(rest) + "'");
}

double to_si(const Scaled& s) { return s.number * s.unit.mul / s.unit.div; }

double parse_number(std::string_view text) { return parse_scaled(text, Dim::none, false).number; }

double parse_positive(std::string_view text, Dim dim) {
  const double v = to_si(parse_scaled(text, dim, false));
  require(v > 0.0, ErrorKind::config, "value must be positive");
  return v;
}

double parse_nonneg(std::string_view text, Dim dim) {
  const double v = to_si(parse_scaled(text, dim, false));
  require(v >= 0.0, ErrorKind::config, "value must be non-negative");
  return v;
}

// Rate given as a lifetime; "inf" means no decay.
double parse_inverse_rate(std::string_view text) {
  const Scaled s = parse_scaled(text, Dim::time, true);
  require(s.number > 0.0, ErrorKind::config, "lifetime must be positive");
  if (std::isinf(s.number)) return 0.0;
  return s.unit.div / (s.number * s.unit.mul);
}

int parse_int(std::string_view text, int lo) {
  text = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  require(ec == std::errc() && ptr == text.data() + text.size(), ErrorKind::config,
          "expected an integer, got '" + std::string(text) + "'");
  require(v >= lo, ErrorKind::config, "value must be at least " + std::to_string(lo));
  return v;
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

// "a, b, c" or "start:stop:step"
std::vector<double> parse_number_list(std::string_view text) {
  text = trim(text);
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::string_view rest = text;
    while (true) {
      const auto colon = rest.find(':');
      parts.push_back(parse_number(rest.substr(0, colon)));
      if (colon == std::string_view::npos) break;
      rest.remove_prefix(colon + 1);
    }
    require(parts.size() == 3, ErrorKind::config, "range must be start:stop:step");
    const double start = parts[0], stop = parts[1], step = parts[2];
    require(step > 0.0 && stop >= start, ErrorKind::config,
            "range needs step > 0 and stop >= start");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    require(n <= 100000, ErrorKind::config, "range has too many points");
    for (std::size_t i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  if (text.empty()) return out;
  for (std::string_view item : split_list(text)) out.push_back(parse_number(item));
  return out;
}

constexpr std::array<std::string_view, 3> kPairNames{"fe", "fg", "eg"};

using Handler = std::function<void(RunConfig&, std::string_view)>;
using SectionTable = std::map<std::string, Handler, std::less<>>;

std::map<std::string, SectionTable, std::less<>> build_tables() {
  std::map<std::string, SectionTable, std::less<>> t;

  for (int step = 1; step <= 2; ++step) {
    auto spectrum = [step](RunConfig& c) -> RunConfig::Spectrum& {
      return step == 1 ? c.step1 : c.step2;
    };
    auto& q = t["qutrit.step" + std::to_string(step)];
    q["omega_eg"] = [spectrum](RunConfig& c, std::string_view v) {
      spectrum(c).eg_hz = parse_positive(v, Dim::frequency);
    };
    q["omega_fe"] = [spectrum](RunConfig& c, std::string_view v) {
      spectrum(c).fe_hz = parse_positive(v, Dim::frequency);
    };

    auto& n = t["noise.step" + std::to_string(step)];
    auto noise = [step](RunConfig& c) -> NoiseModel& { return step == 1 ? c.noise1 : c.noise2; };
    for (std::size_t p = 0; p < 3; ++p) {
      const std::string pair(kPairNames[p]);
      n["gamma_phi_" + pair] = [noise, p](RunConfig& c, std::string_view v) {
        noise(c).gamma_phi[p] = parse_nonneg(v, Dim::rate);
      };
      n["gamma_phi_" + pair + "_inv"] = [noise, p](RunConfig& c, std::string_view v) {
        noise(c).gamma_phi[p] = parse_inverse_rate(v);
      };
      n["gamma_" + pair] = [noise, p](RunConfig& c, std::string_view v) {
        noise(c).gamma_relax[p] = parse_nonneg(v, Dim::rate);
      };
      n["gamma_" + pair + "_inv"] = [noise, p](RunConfig& c, std::string_view v) {
        noise(c).gamma_relax[p] = parse_inverse_rate(v);
      };
    }
  }

  auto& cav = t["cavities"];
  for (std::size_t j = 0; j < 3; ++j) {
    const std::string idx = std::to_string(j + 1);
    cav["omega_c" + idx] = [j](RunConfig& c, std::string_view v) {
      c.cavity_hz[j] = parse_positive(v, Dim::frequency);
    };
    cav["kappa" + idx] = [j](RunConfig& c, std::string_view v) {
      c.kappa[j] = parse_nonneg(v, Dim::rate);
    };
    cav["kappa" + idx + "_inv"] = [j](RunConfig& c, std::string_view v) {
      c.kappa[j] = parse_inverse_rate(v);
    };
    cav["nbar" + idx] = [j](RunConfig& c, std::string_view v) {
      c.nbar[j] = parse_number(v);
      require(c.nbar[j] > 0.0, ErrorKind::config, "mean photon number must be positive");
    };
  }

  auto& cp = t["couplings"];
  cp["g_r"] = [](RunConfig& c, std::string_view v) { c.g_r_hz = parse_positive(v, Dim::frequency); };
  cp["b"] = [](RunConfig& c, std::string_view v) { c.b = parse_number(v); };
  const std::array<std::string, 3> pair_keys{"g12", "g13", "g23"};
  for (std::size_t i = 0; i < 3; ++i) {
    cp[pair_keys[i]] = [i](RunConfig& c, std::string_view v) {
      c.crosstalk_hz[i] = parse_nonneg(v, Dim::frequency);
    };
  }
  const std::array<std::string, 4> cap_keys{"cap_1", "cap_2", "cap_3", "cap_sigma"};
  for (std::size_t i = 0; i < 4; ++i) {
    cp[cap_keys[i]] = [i](RunConfig& c, std::string_view v) {
      if (!c.capacitances) c.capacitances = std::array<double, 4>{0, 0, 0, 0};
      (*c.capacitances)[i] = parse_positive(v, Dim::capacitance);
    };
  }
  for (int step = 1; step <= 2; ++step) {
    for (int j = 1; j <= 3; ++j) {
      for (std::size_t p = 0; p < 3; ++p) {
        const std::string key =
            "ratio" + std::to_string(step) + "_" + std::to_string(j) + std::string(kPairNames[p]);
        const bool wanted = is_wanted(step == 1 ? Step::one : Step::two, j,
                                      static_cast<LevelPair>(p));
        cp[key] = [step, j, p, wanted](RunConfig& c, std::string_view v) {
          require(!wanted, ErrorKind::config, "wanted coupling ratio is fixed at 1");
          const double r = parse_number(v);
          require(r >= 0.0, ErrorKind::config, "coupling ratio must be non-negative");
          (step == 1 ? c.ratios.step1 : c.ratios.step2)[j - 1][p] = r;
        };
      }
    }
  }

  auto& sch = t["schedule"];
  sch["t_d"] = [](RunConfig& c, std::string_view v) { c.t_d = parse_nonneg(v, Dim::time); };
  sch["t_b"] = [](RunConfig& c, std::string_view v) { c.t_b = parse_nonneg(v, Dim::time); };

  auto& sw = t["sweep"];
  sw["b_values"] = [](RunConfig& c, std::string_view v) { c.b_values = parse_number_list(v); };
  sw["gkl_over_gr"] = [](RunConfig& c, std::string_view v) {
    c.gkl_values = parse_number_list(v);
    for (double g : c.gkl_values) {
      require(g >= 0.0, ErrorKind::config, "g_kl/g_r values must be non-negative");
    }
  };
  sw["workers"] = [](RunConfig& c, std::string_view v) {
    c.workers = trim(v) == "auto" ? 0 : static_cast<std::size_t>(parse_int(v, 1));
  };

  auto& in = t["integrator"];
  in["dt"] = [](RunConfig& c, std::string_view v) {
    c.dt = trim(v) == "auto" ? 0.0 : parse_positive(v, Dim::time);
  };
  in["points_per_period"] = [](RunConfig& c, std::string_view v) {
    c.points_per_period = parse_int(v, 4);
  };
  in["cutoffs"] = [](RunConfig& c, std::string_view v) {
    const auto items = split_list(v);
    require(items.size() == 1 || items.size() == 3, ErrorKind::config,
            "cutoffs takes one value or three");
    for (std::size_t j = 0; j < 3; ++j) {
      c.cutoffs[j] = parse_int(items[items.size() == 1 ? 0 : j], 1);
    }
  };
  in["max_frequency_hint"] = [](RunConfig& c, std::string_view v) {
    c.max_frequency_hint_hz = parse_nonneg(v, Dim::frequency);
  };
  return t;
}

const std::map<std::string, SectionTable, std::less<>>& tables() {
  static const auto t = build_tables();
  return t;
}

// Checks that need the whole file.
void cross_validate(const RunConfig& c, std::vector<std::string>& errors) {
  auto check = [&](const std::function<void()>& f) {
    try {
      f();
    } catch (const Error& e) {
      errors.push_back(e.what());
    }
  };
  if (c.capacitances) {
    check([&] {
      for (double v : *c.capacitances) {
        require(v > 0.0, ErrorKind::config, "cap_1, cap_2, cap_3 and cap_sigma must all be set");
      }
      for (double v : c.crosstalk_hz) {
        require(v == 0.0, ErrorKind::config, "give either g12/g13/g23 or capacitances, not both");
      }
    });
  }
  if (c.b) check([&] { check_dispersive_ratio(*c.b); });
  for (double b : c.b_values) check([&] { check_dispersive_ratio(b); });
  check([&] {
    const ProtocolSetup setup = to_setup(c);
    make_step_params(setup.physics, Step::one, c.b.value_or(8.0));
    make_step_params(setup.physics, Step::two, c.b.value_or(8.0));
  });
}

}  // namespace

std::vector<double> RunConfig::default_b_grid() {
  std::vector<double> v;
  for (int i = 0; i <= 20; ++i) v.push_back(4.0 + 0.5 * i);
  return v;
}

std::array<double, 3> RunConfig::effective_crosstalk_hz() const {
  if (!capacitances) return crosstalk_hz;
  const auto& c = *capacitances;
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < kCavityPairs.size(); ++i) {
    const auto [k, l] = kCavityPairs[i];
    out[i] = crosstalk_estimate(c[k - 1], c[l - 1], c[3], g_r_hz);
  }
  return out;
}

RunConfig parse_config_text(std::string_view text) {
  RunConfig cfg;
  std::vector<std::string> errors;
  std::set<std::string> seen;
  const SectionTable* section = nullptr;
  std::string section_name;
  std::size_t line_no = 0;

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    std::string_view line(raw);
    const auto hash = line.find_first_of("#;");
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back(where + "malformed section header");
        section = nullptr;
        continue;
      }
      section_name = std::string(trim(line.substr(1, line.size() - 2)));
      const auto it = tables().find(section_name);
      section = it == tables().end() ? nullptr : &it->second;
      if (!section) errors.push_back(where + "unknown section [" + section_name + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back(where + "expected 'key = value'");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section_name.empty()) {
      errors.push_back(where + "key '" + key + "' appears before any section");
      continue;
    }
    if (!section) continue;  // already reported
    const auto it = section->find(key);
    if (it == section->end()) {
      errors.push_back(where + "unknown key '" + key + "' in [" + section_name + "]");
      continue;
    }
    // kappa1 and kappa1_inv name the same setting.
    std::string_view base(key);
    if (base.ends_with("_inv")) base.remove_suffix(4);
    if (!seen.insert(section_name + "." + std::string(base)).second) {
      errors.push_back(where + "setting '" + std::string(base) + "' given twice");
      continue;
    }
    try {
      it->second(cfg, value);
    } catch (const Error& e) {
      errors.push_back(where + key + ": " + e.what());
    }
  }
  if (errors.empty()) cross_validate(cfg, errors);

  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const std::string& e : errors) msg += "\n  " + e;
    fail(ErrorKind::config, msg);
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(f.good(), ErrorKind::config, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

std::string canonical_text(const RunConfig& c) {
  std::ostringstream o;
  auto kv = [&](const std::string& k, const std::string& v) { o << k << " = " << v << "\n"; };
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
    return s;
  };

  for (int step = 1; step <= 2; ++step) {
    const auto& s = step == 1 ? c.step1 : c.step2;
    o << "[qutrit.step" << step << "]\n";
    kv("omega_eg", fmt(s.eg_hz) + " Hz");
    kv("omega_fe", fmt(s.fe_hz) + " Hz");
  }
  o << "[cavities]\n";
  for (int j = 0; j < 3; ++j) kv("omega_c" + std::to_string(j + 1), fmt(c.cavity_hz[j]) + " Hz");
  for (int j = 0; j < 3; ++j) kv("kappa" + std::to_string(j + 1), fmt(c.kappa[j]) + " /s");
  for (int j = 0; j < 3; ++j) kv("nbar" + std::to_string(j + 1), fmt(c.nbar[j]));

  o << "[couplings]\n";
  kv("g_r", fmt(c.g_r_hz) + " Hz");
  if (c.b) kv("b", fmt(*c.b));
  if (c.capacitances) {
    const auto& cap = *c.capacitances;
    kv("cap_1", fmt(cap[0]) + " F");
    kv("cap_2", fmt(cap[1]) + " F");
    kv("cap_3", fmt(cap[2]) + " F");
    kv("cap_sigma", fmt(cap[3]) + " F");
  } else {
    kv("g12", fmt(c.crosstalk_hz[0]) + " Hz");
    kv("g13", fmt(c.crosstalk_hz[1]) + " Hz");
    kv("g23", fmt(c.crosstalk_hz[2]) + " Hz");
  }
  for (int step = 1; step <= 2; ++step) {
    const auto& r = step == 1 ? c.ratios.step1 : c.ratios.step2;
    for (int j = 1; j <= 3; ++j) {
      for (std::size_t p = 0; p < 3; ++p) {
        if (is_wanted(step == 1 ? Step::one : Step::two, j, static_cast<LevelPair>(p))) continue;
        kv("ratio" + std::to_string(step) + "_" + std::to_string(j) + std::string(kPairNames[p]),
           fmt(r[j - 1][p]));
      }
    }
  }

  for (int step = 1; step <= 2; ++step) {
    const NoiseModel& n = step == 1 ? c.noise1 : c.noise2;
    o << "[noise.step" << step << "]\n";
    for (std::size_t p = 0; p < 3; ++p) {
      kv("gamma_phi_" + std::string(kPairNames[p]), fmt(n.gamma_phi[p]) + " /s");
    }
    for (std::size_t p = 0; p < 3; ++p) {
      kv("gamma_" + std::string(kPairNames[p]), fmt(n.gamma_relax[p]) + " /s");
    }
  }

  o << "[schedule]\n";
  kv("t_d", fmt(c.t_d) + " s");
  kv("t_b", fmt(c.t_b) + " s");

  o << "[sweep]\n";
  kv("b_values", list(c.b_values));
  kv("gkl_over_gr", list(c.gkl_values));
  kv("workers", c.workers == 0 ? "auto" : std::to_string(c.workers));

  o << "[integrator]\n";
  kv("dt", c.dt == 0.0 ? "auto" : fmt(c.dt) + " s");
  kv("points_per_period", std::to_string(c.points_per_period));
  kv("cutoffs", std::to_string(c.cutoffs[0]) + ", " + std::to_string(c.cutoffs[1]) + ", " +
                    std::to_string(c.cutoffs[2]));
  kv("max_frequency_hint", fmt(c.max_frequency_hint_hz) + " Hz");
  return o.str();
}

ProtocolSetup to_setup(const RunConfig& c) {
  ProtocolSetup s;
  s.physics.step1_spectrum = {kTwoPi * c.step1.eg_hz, kTwoPi * c.step1.fe_hz};
  s.physics.step2_spectrum = {kTwoPi * c.step2.eg_hz, kTwoPi * c.step2.fe_hz};
  for (int j = 0; j < 3; ++j) s.physics.cavities.omega[j] = kTwoPi * c.cavity_hz[j];
  s.physics.cavities.kappa = c.kappa;
  s.physics.g_r = kTwoPi * c.g_r_hz;
  s.physics.ratios = c.ratios;
  const auto cross = c.effective_crosstalk_hz();
  for (int i = 0; i < 3; ++i) s.physics.crosstalk[i] = kTwoPi * cross[i];
  s.noise1 = c.noise1;
  s.noise2 = c.noise2;
  for (int j = 0; j < 3; ++j) {
    s.noise1.kappa[j] = c.kappa[j];
    s.noise2.kappa[j] = c.kappa[j];
  }
  s.noise1.step = Step::one;
  s.noise2.step = Step::two;
  s.t_d = c.t_d;
  s.t_b = c.t_b;
  s.cutoffs = c.cutoffs;
  s.integrator.dt = c.dt;
  s.integrator.points_per_period = c.points_per_period;
  s.integrator.max_frequency_hint = kTwoPi * c.max_frequency_hint_hz;
  s.nbar = c.nbar;
  return s;
}

}  // namespace ghz
