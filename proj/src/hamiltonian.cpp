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

#include "ghz/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ghz/error.hpp"

namespace ghz {
namespace {

std::size_t pair_index(LevelPair pair) { return static_cast<std::size_t>(pair); }

void check_cavity(int cavity) {
  require(cavity >= 1 && cavity <= 3, ErrorKind::invalid_argument,
          "cavity index must be 1, 2 or 3, got " + std::to_string(cavity));
}

double row_sum_norm(const OperatorMatrix& op) {
  double best = 0.0;
  for (std::size_t r = 0; r < op.rows(); ++r) {
    double s = 0.0;
    for (const Complex& v : op.row(r)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

OperatorMatrix cavity_op(int cavity, const HilbertSpace& space) {
  return lift(annihilation(space.fock_cutoffs()[cavity - 1]), cavity_slot(cavity), space);
}

// a_j S+_xy on the full space.
OperatorMatrix absorb_op(int cavity, LevelPair pair, const HilbertSpace& space) {
  return cavity_op(cavity, space) * lift(raising(pair), Slot::qutrit, space);
}

void add_crosstalk(HarmonicOperator& h, const StepParams& p, const HilbertSpace& space) {
  for (std::size_t i = 0; i < kCavityPairs.size(); ++i) {
    const double g = p.couplings.crosstalk[i];
    if (g == 0.0) continue;
    const auto [k, l] = kCavityPairs[i];
    OperatorMatrix op = cavity_op(k, space) * cavity_op(l, space).adjoint();
    h.add_coupling(g, op, p.cavity_detuning(k, l));
  }
}

void check_finite_nonneg(double v, const char* what) {
  require(std::isfinite(v) && v >= 0.0, ErrorKind::invalid_argument,
          std::string(what) + " must be finite and non-negative");
}

}  // namespace

HarmonicOperator HarmonicOperator::constant(OperatorMatrix op) {
  require(op.is_square(), ErrorKind::shape, "constant Hamiltonian must be square");
  HarmonicOperator h(op.rows());
  h.add(std::move(op), 0.0);
  return h;
}

void HarmonicOperator::add(OperatorMatrix op, double omega) {
  require(op.rows() == dim_ && op.cols() == dim_, ErrorKind::shape,
          "harmonic term dimension mismatch");
  require(std::isfinite(omega), ErrorKind::invalid_argument, "harmonic frequency must be finite");
  terms_.push_back({std::move(op), omega});
}

void HarmonicOperator::add_coupling(double g, const OperatorMatrix& op, double omega) {
  OperatorMatrix fwd = Complex(g) * op;
  OperatorMatrix back = fwd.adjoint();
  add(std::move(fwd), omega);
  add(std::move(back), -omega);
}

OperatorMatrix HarmonicOperator::at(double t) const {
  OperatorMatrix out = OperatorMatrix::zeros(dim_);
  for (const HarmonicTerm& term : terms_) {
    simd::kernels().axpy(out.size(), std::polar(1.0, term.omega * t), term.op.data(), out.data());
  }
  return out;
}

double HarmonicOperator::max_frequency() const {
  double w = 0.0;
  for (const HarmonicTerm& term : terms_) w = std::max(w, std::abs(term.omega));
  return w;
}

double HarmonicOperator::norm_bound() const {
  double s = 0.0;
  for (const HarmonicTerm& term : terms_) s += row_sum_norm(term.op);
  return s;
}

double QutritSpectrum::omega(LevelPair pair) const {
  switch (pair) {
    case LevelPair::fe: return omega_fe;
    case LevelPair::fg: return omega_fg();
    case LevelPair::eg: return omega_eg;
  }
  fail(ErrorKind::invalid_argument, "unknown level pair");
}

std::array<double, 3> CavitySet::quality_factors() const {
  std::array<double, 3> q{};
  for (int j = 0; j < 3; ++j) {
    q[j] = kappa[j] == 0.0 ? std::numeric_limits<double>::infinity() : omega[j] / kappa[j];
  }
  return q;
}

double& CouplingSet::at(int cavity, LevelPair pair) {
  check_cavity(cavity);
  return qutrit_cavity[cavity - 1][pair_index(pair)];
}

double CouplingSet::at(int cavity, LevelPair pair) const {
  check_cavity(cavity);
  return qutrit_cavity[cavity - 1][pair_index(pair)];
}

double StepParams::delta() const { return detuning(1, LevelPair::fg); }

double StepParams::detuning(int cavity, LevelPair pair) const {
  check_cavity(cavity);
  return spectrum.omega(pair) - cavities.omega[cavity - 1];
}

double StepParams::cavity_detuning(int k, int l) const {
  check_cavity(k);
  check_cavity(l);
  return cavities.omega[l - 1] - cavities.omega[k - 1];
}

void StepParams::validate() const {
  require(spectrum.omega_eg > 0.0 && spectrum.omega_fe > 0.0 && std::isfinite(spectrum.omega_fg()),
          ErrorKind::invalid_argument, "qutrit transition frequencies must be positive");
  for (int j = 0; j < 3; ++j) {
    require(cavities.omega[j] > 0.0 && std::isfinite(cavities.omega[j]),
            ErrorKind::invalid_argument, "cavity frequencies must be positive");
    check_finite_nonneg(cavities.kappa[j], "cavity decay rate");
    for (double g : couplings.qutrit_cavity[j]) check_finite_nonneg(g, "qutrit-cavity coupling");
    check_finite_nonneg(couplings.crosstalk[j], "cavity crosstalk coupling");
  }
  check_finite_nonneg(couplings.g_r, "g_r");
  for (const auto& [k, l] : kCavityPairs) {
    require(cavities.omega[k - 1] != cavities.omega[l - 1], ErrorKind::invalid_argument,
            "cavity frequencies must be distinct");
  }
  if (step == Step::one) {
    const double d1 = detuning(1, LevelPair::fg);
    const double d2 = detuning(2, LevelPair::fe);
    require(std::abs(d1 - d2) <= 1e-9 * std::max(std::abs(d1), std::abs(d2)),
            ErrorKind::invalid_argument,
            "step one needs omega_fg - omega_c1 == omega_fe - omega_c2");
  } else {
    const double wc3 = cavities.omega[2];
    require(std::abs(spectrum.omega_eg - wc3) <= 1e-9 * wc3, ErrorKind::invalid_argument,
            "step two needs cavity 3 resonant with the e<->g transition");
  }
}

CouplingRatios CouplingRatios::defaults() {
  CouplingRatios r;
  // [cavity][fe, fg, eg]
  r.step1 = {{{1.0, 1.0, 0.1}, {1.0, 1.0, 0.1}, {1.0, 1.0, 0.1}}};
  r.step2 = {{{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}}};
  return r;
}

bool is_wanted(Step step, int cavity, LevelPair pair) {
  if (step == Step::one) {
    return (cavity == 1 && pair == LevelPair::fg) || (cavity == 2 && pair == LevelPair::fe);
  }
  return cavity == 3 && pair == LevelPair::eg;
}

StepParams make_step_params(const PhysicalParameters& phys, Step step, double b) {
  require(std::isfinite(b) && b > 0.0, ErrorKind::invalid_argument, "b must be positive");
  const double delta = phys.delta();
  require(delta != 0.0, ErrorKind::singular_detuning, "step-one detuning delta is zero");
  const double g = std::abs(delta) / b;

  StepParams p;
  p.step = step;
  p.spectrum = step == Step::one ? phys.step1_spectrum : phys.step2_spectrum;
  p.cavities = phys.cavities;
  p.couplings.g_r = phys.g_r;
  p.couplings.crosstalk = phys.crosstalk;
  const auto& ratios = step == Step::one ? phys.ratios.step1 : phys.ratios.step2;
  for (int j = 1; j <= 3; ++j) {
    const double ref = j == 3 ? phys.g_r : g;
    for (LevelPair pair : kLevelPairs) {
      const double ratio = is_wanted(step, j, pair) ? 1.0 : ratios[j - 1][pair_index(pair)];
      check_finite_nonneg(ratio, "coupling ratio");
      p.couplings.at(j, pair) = ratio * ref;
    }
  }
  p.validate();
  return p;
}

StepParams default_params(Step step, double b) {
  return make_step_params(PhysicalParameters{}, step, b);
}

HarmonicOperator ideal_step1_model(const StepParams& p, const HilbertSpace& space) {
  require(p.step == Step::one, ErrorKind::invalid_argument, "ideal model is defined for step one");
  const double delta = p.delta();
  HarmonicOperator h(space.dim());
  h.add_coupling(p.g1(), absorb_op(1, LevelPair::fg, space), delta);
  h.add_coupling(p.g2(), absorb_op(2, LevelPair::fe, space), delta);
  return h;
}

OperatorMatrix ideal_step1_hamiltonian(double t, const StepParams& p, const HilbertSpace& space) {
  return ideal_step1_model(p, space).at(t);
}

OperatorMatrix effective_h0(const StepParams& p, const HilbertSpace& space) {
  require(p.step == Step::one, ErrorKind::invalid_argument,
          "effective Hamiltonian is defined for step one");
  const double delta = p.delta();
  require(delta != 0.0, ErrorKind::singular_detuning, "effective Hamiltonian needs delta != 0");
  const OperatorMatrix a1 = cavity_op(1, space);
  const OperatorMatrix a2 = cavity_op(2, space);
  OperatorMatrix h = Complex(-p.g1() * p.g1() / delta) *
                     (a1.adjoint() * a1 * lift(qutrit_projector(Level::g), Slot::qutrit, space));
  h -= Complex(p.g2() * p.g2() / delta) *
       (a2.adjoint() * a2 * lift(qutrit_projector(Level::e), Slot::qutrit, space));
  return h;
}

OperatorMatrix effective_hI(const StepParams& p, const HilbertSpace& space) {
  require(p.step == Step::one, ErrorKind::invalid_argument,
          "effective Hamiltonian is defined for step one");
  const double delta = p.delta();
  require(delta != 0.0, ErrorKind::singular_detuning, "effective Hamiltonian needs delta != 0");
  const OperatorMatrix a1 = cavity_op(1, space);
  const OperatorMatrix a2 = cavity_op(2, space);
  OperatorMatrix op = a1.adjoint() * a2 * lift(lowering(LevelPair::eg), Slot::qutrit, space);
  OperatorMatrix h = op + op.adjoint();
  h *= Complex(-p.g1() * p.g2() / delta);
  return h;
}

HarmonicOperator full_step1_model(const StepParams& p, const HilbertSpace& space) {
  require(p.step == Step::one, ErrorKind::invalid_argument, "expected step-one parameters");
  HarmonicOperator h(space.dim());
  for (int j = 1; j <= 3; ++j) {
    for (LevelPair pair : kLevelPairs) {
      const double g = p.couplings.at(j, pair);
      if (g == 0.0) continue;
      // Wanted terms share the exact common detuning so that zeroing the
      // unwanted couplings reproduces the ideal model bit for bit.
      const double omega = is_wanted(Step::one, j, pair) ? p.delta() : p.detuning(j, pair);
      h.add_coupling(g, absorb_op(j, pair, space), omega);
    }
  }
  add_crosstalk(h, p, space);
  return h;
}

OperatorMatrix full_step1_hamiltonian(double t, const StepParams& p, const HilbertSpace& space) {
  return full_step1_model(p, space).at(t);
}

HarmonicOperator full_step2_model(const StepParams& p, const HilbertSpace& space) {
  require(p.step == Step::two, ErrorKind::invalid_argument, "expected step-two parameters");
  HarmonicOperator h(space.dim());
  for (int j = 1; j <= 3; ++j) {
    for (LevelPair pair : kLevelPairs) {
      const double g = p.couplings.at(j, pair);
      if (g == 0.0) continue;
      const double omega = is_wanted(Step::two, j, pair) ? 0.0 : p.detuning(j, pair);
      h.add_coupling(g, absorb_op(j, pair, space), omega);
    }
  }
  add_crosstalk(h, p, space);
  return h;
}

OperatorMatrix full_step2_hamiltonian(double t, const StepParams& p, const HilbertSpace& space) {
  return full_step2_model(p, space).at(t);
}

}  // namespace ghz
