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

#include "ghz/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ghz/error.hpp"

namespace ghz {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_time(double t, const char* what, bool allow_zero) {
  require(std::isfinite(t) && (allow_zero ? t >= 0.0 : t > 0.0), ErrorKind::invalid_argument,
          std::string(what) + (allow_zero ? " must be non-negative" : " must be positive"));
}

double shortest_lifetime(const NoiseModel& n) {
  double t = kInf;
  for (int i = 0; i < 3; ++i) {
    for (double rate : {n.gamma_relax[i], n.gamma_phi[i]}) {
      if (rate > 0.0) t = std::min(t, 1.0 / rate);
    }
  }
  return t;
}

bool crosstalk_detuned(const StepParams& p) {
  for (std::size_t i = 0; i < kCavityPairs.size(); ++i) {
    const auto [k, l] = kCavityPairs[i];
    if (std::abs(p.cavity_detuning(k, l)) < kConditionMargin * p.couplings.crosstalk[i]) {
      return false;
    }
  }
  return true;
}

// Actual step evolve_master takes for this generator and segmentation.
double step_used(const HarmonicOperator& h, const NoiseModel& noise, const IntegratorConfig& cfg,
                 double duration, std::size_t segments) {
  if (duration == 0.0) return 0.0;
  const double dt_max = resolve_dt(cfg, generator_frequency(h, noise));
  const double seg = duration / static_cast<double>(segments);
  return seg / static_cast<double>(step_count(seg, dt_max));
}

DensityMatrix idle(const DensityMatrix& rho, const NoiseModel& noise, const HilbertSpace& space,
                   double duration, const IntegratorConfig& cfg) {
  if (duration == 0.0) return rho;
  return evolve_master(rho, HarmonicOperator(space.dim()), noise, space, duration, cfg);
}

}  // namespace

void ProtocolSchedule::validate() const {
  check_time(t1, "t1", false);
  check_time(t2, "t2", false);
  check_time(t_d, "t_d", true);
  check_time(t_b, "t_b", true);
}

ProtocolSchedule make_schedule(const StepParams& step1, const StepParams& step2, double t_d,
                               double t_b) {
  require(step1.step == Step::one && step2.step == Step::two, ErrorKind::invalid_argument,
          "schedule needs step-one and step-two parameters");
  const double gg = step1.g1() * step1.g2();
  require(gg > 0.0, ErrorKind::invalid_argument, "wanted step-one couplings must be positive");
  require(step2.couplings.g_r > 0.0, ErrorKind::invalid_argument, "g_r must be positive");
  ProtocolSchedule s;
  s.t1 = std::abs(step1.delta()) * std::numbers::pi / (4.0 * gg);
  s.t2 = std::numbers::pi / (2.0 * step2.couplings.g_r);
  s.t_d = t_d;
  s.t_b = t_b;
  s.validate();
  return s;
}

GhzTarget GhzTarget::standard(const HilbertSpace& space) {
  const std::size_t a = space.index(Level::g, {0, 1, 1});
  const std::size_t b = space.index(Level::g, {1, 0, 0});
  ComplexVector amp(space.dim());
  const double r = 1.0 / std::numbers::sqrt2;
  amp[a] = Complex(0.0, -r);
  amp[b] = Complex(0.0, r);
  return GhzTarget{StateVector(std::move(amp)), a, b};
}

void check_dispersive_ratio(double b) {
  require(std::isfinite(b) && b > 2.0, ErrorKind::invalid_argument,
          "b = delta/g must exceed 2 (dispersive-regime guard), got " + std::to_string(b));
}

ProtocolInputs make_protocol_inputs(const ProtocolSetup& setup, double b,
                                    std::optional<double> gkl_over_gr) {
  check_dispersive_ratio(b);
  PhysicalParameters phys = setup.physics;
  if (gkl_over_gr) {
    require(std::isfinite(*gkl_over_gr) && *gkl_over_gr >= 0.0, ErrorKind::invalid_argument,
            "g_kl/g_r must be finite and non-negative");
    phys.crosstalk.fill(*gkl_over_gr * phys.g_r);
  }
  ProtocolInputs in{make_step_params(phys, Step::one, b),
                    make_step_params(phys, Step::two, b),
                    setup.noise1,
                    setup.noise2,
                    {},
                    HilbertSpace(setup.cutoffs),
                    setup.integrator,
                    setup.nbar};
  in.noise1.step = Step::one;
  in.noise2.step = Step::two;
  in.schedule = make_schedule(in.step1, in.step2, setup.t_d, setup.t_b);
  return in;
}

ProtocolResult run_protocol(const ProtocolInputs& in) {
  in.step1.validate();
  in.step2.validate();
  require(in.step1.step == Step::one && in.step2.step == Step::two, ErrorKind::invalid_argument,
          "protocol needs step-one then step-two parameters");
  require(in.step1.g1() == in.step1.g2(), ErrorKind::invalid_argument,
          "protocol runs require g1 == g2");
  in.noise1.validate();
  in.noise2.validate();
  in.schedule.validate();
  in.integrator.validate();
  const HilbertSpace& space = in.space;
  const ProtocolSchedule& s = in.schedule;

  const HarmonicOperator h1 = full_step1_model(in.step1, space);
  const HarmonicOperator h2 = full_step2_model(in.step2, space);

  DensityMatrix rho = DensityMatrix::from_state(basis_state(Level::e, {0, 1, 0}, space));
  rho = idle(rho, in.noise1, space, s.t_d, in.integrator);

  std::vector<std::size_t> f_states;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    if (space.label(i).level == Level::f) f_states.push_back(i);
  }
  double max_f = 0.0;
  auto watch_f = [&](double, const ComplexMatrix& m) {
    double p = 0.0;
    for (std::size_t i : f_states) p += m(i, i).real();
    max_f = std::max(max_f, p);
  };
  rho = evolve_master(rho, h1, in.noise1, space, s.t1, in.integrator, kLeakageSamples, watch_f);
  DensityMatrix after_step1 = rho;

  rho = idle(rho, in.noise1, space, s.t_d, in.integrator);
  rho = idle(rho, in.noise2, space, s.t_b, in.integrator);
  rho = evolve_master(rho, h2, in.noise2, space, s.t2, in.integrator);
  rho = idle(rho, in.noise2, space, s.t_d, in.integrator);

  Diagnostics d;
  d.b = in.step1.b();
  d.p_leak = f_leak_bound(d.b);
  d.t_cav = cavity_lifetimes(in.step1.cavities.quality_factors(), in.step1.cavities.omega, in.nbar)
                .t_cav;
  d.tau = s.tau();
  d.t1 = s.t1;
  d.t2 = s.t2;
  d.max_f_population = max_f;
  d.dt_step1 = step_used(h1, in.noise1, in.integrator, s.t1, kLeakageSamples);
  d.dt_step2 = step_used(h2, in.noise2, in.integrator, s.t2, 1);
  const double t_qutrit = std::min(shortest_lifetime(in.noise1), shortest_lifetime(in.noise2));
  d.flags.tau_vs_qutrit = kConditionMargin * d.tau <= t_qutrit;
  d.flags.tau_vs_cavity = kConditionMargin * d.tau <= d.t_cav;
  d.flags.crosstalk_detuned = crosstalk_detuned(in.step1);

  const GhzTarget target = GhzTarget::standard(space);
  const auto [f_opt, phi] = phase_optimized_ghz_fidelity(rho, space);
  const double f = fidelity(rho, target);
  return ProtocolResult{std::move(rho), std::move(after_step1), d, f, f_opt, phi};
}

double fidelity(const DensityMatrix& rho, const GhzTarget& target) {
  require(rho.dim() == target.state.dim(), ErrorKind::shape,
          "fidelity: state and target dimensions differ");
  const ComplexVector rpsi = rho.matrix() * target.state.amplitudes();
  const double f = inner(target.state.amplitudes(), rpsi).real();
  require(f >= -1e-9 && f <= 1.0 + 1e-9, ErrorKind::invariant,
          "fidelity " + std::to_string(f) + " outside [0, 1]");
  return std::clamp(f, 0.0, 1.0);
}

std::pair<double, double> phase_optimized_ghz_fidelity(const DensityMatrix& rho,
                                                       const HilbertSpace& space) {
  require(rho.dim() == space.dim(), ErrorKind::shape, "state and space dimensions differ");
  const std::size_t a = space.index(Level::g, {0, 1, 1});
  const std::size_t b = space.index(Level::g, {1, 0, 0});
  const Complex coh = rho(a, b);
  const double f = 0.5 * (rho(a, a).real() + rho(b, b).real()) + std::abs(coh);
  double phi = 0.0;
  if (coh != Complex(0.0)) {
    phi = std::fmod(-std::arg(coh) + 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
  }
  return {std::clamp(f, 0.0, 1.0), phi};
}

double level_population(const ComplexMatrix& rho, const HilbertSpace& space, Level level) {
  require(rho.rows() == space.dim() && rho.is_square(), ErrorKind::shape,
          "state and space dimensions differ");
  double p = 0.0;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    if (space.label(i).level == level) p += rho(i, i).real();
  }
  return p;
}

double f_leak_bound(double b) {
  require(std::isfinite(b) && b > 0.0, ErrorKind::invalid_argument, "b must be positive");
  return 4.0 / (4.0 + b * b);
}

CavityLifetimes cavity_lifetimes(const std::array<double, 3>& q,
                                 const std::array<double, 3>& omega_c,
                                 const std::array<double, 3>& nbar) {
  CavityLifetimes out;
  double shortest = kInf;
  for (int j = 0; j < 3; ++j) {
    require(q[j] > 0.0 && !std::isnan(q[j]), ErrorKind::invalid_argument,
            "quality factors must be positive");
    require(omega_c[j] > 0.0 && std::isfinite(omega_c[j]), ErrorKind::invalid_argument,
            "cavity frequencies must be positive");
    require(nbar[j] > 0.0 && std::isfinite(nbar[j]), ErrorKind::invalid_argument,
            "mean photon numbers must be positive");
    out.per_cavity[j] = q[j] / omega_c[j] / nbar[j];
    shortest = std::min(shortest, out.per_cavity[j]);
  }
  out.t_cav = shortest / 3.0;
  return out;
}

double crosstalk_estimate(double c_k, double c_l, double c_sigma, double g_r) {
  require(c_k > 0.0 && c_l > 0.0 && c_sigma > 0.0 && std::isfinite(c_k + c_l + c_sigma),
          ErrorKind::invalid_argument, "capacitances must be positive");
  require(g_r >= 0.0 && std::isfinite(g_r), ErrorKind::invalid_argument,
          "g_r must be non-negative");
  require(c_k + c_l < c_sigma, ErrorKind::invalid_argument,
          "C_k + C_l must be smaller than C_sigma");
  return g_r * (c_k + c_l) / c_sigma;
}

}  // namespace ghz
