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

#include "ghz/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "ghz/error.hpp"

namespace ghz {
namespace {

constexpr Complex kMinusI{0.0, -1.0};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void check_rate(double r, const char* what) {
  require(std::isfinite(r) && r >= 0.0, ErrorKind::invalid_argument,
          std::string(what) + " must be finite and non-negative");
}

// L rho L^dagger - (L^dagger L rho + rho L^dagger L)/2
ComplexMatrix dissipator(const OperatorMatrix& l, const ComplexMatrix& rho) {
  const OperatorMatrix ld = l.adjoint();
  const OperatorMatrix ldl = ld * l;
  ComplexMatrix out = l * rho * ld;
  ComplexMatrix anti = ldl * rho + rho * ldl;
  anti *= Complex(0.5);
  out -= anti;
  return out;
}

void check_same_dim(const ComplexMatrix& rho, const HilbertSpace& space) {
  require(rho.rows() == space.dim() && rho.cols() == space.dim(), ErrorKind::shape,
          "density matrix is " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
              ", space has dimension " + std::to_string(space.dim()));
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix entries) : m_(std::move(entries)) {
  require(m_.is_square() && m_.rows() > 0, ErrorKind::shape, "density matrix must be square");
  for (const Complex& v : m_.values()) {
    require(std::isfinite(v.real()) && std::isfinite(v.imag()), ErrorKind::invariant,
            "density matrix has non-finite entries");
  }
  const double herm = hermiticity_error(m_);
  require(herm <= 1e-10, ErrorKind::invariant,
          "density matrix is not Hermitian (error " + sci(herm) + ")");
  const double tr = m_.trace().real();
  require(std::abs(tr - 1.0) <= 1e-8, ErrorKind::invariant,
          "density matrix trace is " + sci(tr));
  const double lo = min_eigenvalue(m_);
  require(lo >= -1e-9, ErrorKind::invariant,
          "density matrix has eigenvalue " + sci(lo));
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
  return DensityMatrix(psi.projector());
}

double NoiseModel::total_rate() const {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += kappa[i] + gamma_relax[i] + gamma_phi[i];
  return s;
}

void NoiseModel::validate() const {
  for (int i = 0; i < 3; ++i) {
    check_rate(kappa[i], "cavity decay rate");
    check_rate(gamma_relax[i], "qutrit relaxation rate");
    check_rate(gamma_phi[i], "qutrit dephasing rate");
  }
}

NoiseModel default_noise(Step step) {
  NoiseModel n;
  n.step = step;
  n.kappa = {1e5, 1e5, 1e5};
  n.gamma_phi = {1e6, 1e6, 1e6};
  // [fe, fg, eg]; the e-g matrix element grows once the barrier is lowered.
  n.gamma_relax = step == Step::one ? std::array<double, 3>{1e5, 1e5, 1e4}
                                    : std::array<double, 3>{1e5, 1e5, 1e5};
  return n;
}

void IntegratorConfig::validate() const {
  require(std::isfinite(dt) && dt >= 0.0, ErrorKind::invalid_argument,
          "dt must be non-negative (0 selects it automatically)");
  require(points_per_period >= 4, ErrorKind::invalid_argument,
          "points_per_period must be at least 4");
  check_rate(max_frequency_hint, "max_frequency_hint");
}

double resolve_dt(const IntegratorConfig& cfg, double model_frequency) {
  cfg.validate();
  if (cfg.dt > 0.0) return cfg.dt;
  const double f = std::max(model_frequency, cfg.max_frequency_hint);
  if (f <= 0.0) return std::numeric_limits<double>::infinity();
  return kTwoPi / (cfg.points_per_period * f);
}

double generator_frequency(const HarmonicOperator& h, const NoiseModel& noise) {
  return std::max({h.max_frequency(), h.norm_bound(), noise.total_rate()});
}

std::size_t step_count(double duration, double dt_max) {
  require(std::isfinite(duration) && duration >= 0.0, ErrorKind::invalid_argument,
          "duration must be finite and non-negative");
  require(dt_max > 0.0, ErrorKind::invalid_argument, "step size must be positive");
  if (duration == 0.0) return 0;
  if (!std::isfinite(dt_max)) return 1;
  auto n = static_cast<std::size_t>(std::ceil(duration / dt_max));
  n = std::max<std::size_t>(n, 1);
  while (duration / static_cast<double>(n) > dt_max) ++n;
  return n;
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const OperatorMatrix& h,
                           const NoiseModel& noise, const HilbertSpace& space) {
  check_same_dim(rho, space);
  require(h.rows() == space.dim() && h.cols() == space.dim(), ErrorKind::shape,
          "Hamiltonian dimension mismatch");
  noise.validate();
  ComplexMatrix out = commutator(h, rho);
  out *= kMinusI;
  for (int j = 1; j <= 3; ++j) {
    if (noise.kappa[j - 1] == 0.0) continue;
    const OperatorMatrix a =
        lift(annihilation(space.fock_cutoffs()[j - 1]), cavity_slot(j), space);
    out += Complex(noise.kappa[j - 1]) * dissipator(a, rho);
  }
  for (LevelPair pair : kLevelPairs) {
    if (noise.dephase(pair) != 0.0) {
      out += Complex(noise.dephase(pair)) *
             dissipator(lift(sz_operator(pair), Slot::qutrit, space), rho);
    }
    if (noise.relax(pair) != 0.0) {
      out += Complex(noise.relax(pair)) *
             dissipator(lift(lowering(pair), Slot::qutrit, space), rho);
    }
  }
  return out;
}

MasterEquation::MasterEquation(const HarmonicOperator& h, const NoiseModel& noise,
                               const HilbertSpace& space)
    : dim_(space.dim()), h_(h.terms(), space.dim()), h_now_(h_.pattern()) {
  require(h.dim() == dim_, ErrorKind::shape, "Hamiltonian dimension mismatch");
  noise.validate();

  for (int j = 1; j <= 3; ++j) {
    add_jump(noise.kappa[j - 1],
             lift(annihilation(space.fock_cutoffs()[j - 1]), cavity_slot(j), space));
  }
  for (LevelPair pair : kLevelPairs) {
    add_jump(noise.relax(pair), lift(lowering(pair), Slot::qutrit, space));
  }

  // Diagonal of sum_k rate_k L_k^dagger L_k.
  std::vector<double> decay(dim_, 0.0);
  for (const Jump& jump : jumps_) {
    for (std::size_t a = 0; a < jump.rows.size(); ++a) {
      decay[jump.src[a]] += jump.rate * std::norm(jump.vals[a]);
    }
  }

  std::array<std::vector<double>, 3> sz;
  for (LevelPair pair : kLevelPairs) {
    const OperatorMatrix s = lift(sz_operator(pair), Slot::qutrit, space);
    auto& diag = sz[static_cast<std::size_t>(pair)];
    diag.resize(dim_);
    for (std::size_t i = 0; i < dim_; ++i) diag[i] = s(i, i).real();
  }

  weights_.assign(dim_ * dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      double w = -0.5 * (decay[i] + decay[k]);
      for (LevelPair pair : kLevelPairs) {
        const auto& s = sz[static_cast<std::size_t>(pair)];
        w += noise.dephase(pair) * (s[i] * s[k] - 0.5 * (s[i] * s[i] + s[k] * s[k]));
      }
      weights_[i * dim_ + k] = w;
    }
  }

  max_frequency_ = generator_frequency(h, noise);
  scratch_ = k1_ = k2_ = k3_ = k4_ = stage_ = ComplexMatrix(dim_, dim_);
}

void MasterEquation::add_jump(double rate, const OperatorMatrix& op) {
  if (rate == 0.0) return;
  Jump jump{rate, {}, {}, {}};
  std::vector<bool> seen(dim_, false);
  for (std::size_t r = 0; r < dim_; ++r) {
    std::size_t count = 0;
    for (std::size_t c = 0; c < dim_; ++c) {
      if (op(r, c) == Complex(0.0)) continue;
      require(++count == 1 && !seen[c], ErrorKind::invariant,
              "jump operator is not a weighted permutation of basis states");
      seen[c] = true;
      jump.rows.push_back(static_cast<std::uint32_t>(r));
      jump.src.push_back(static_cast<std::uint32_t>(c));
      jump.vals.push_back(op(r, c));
    }
  }
  jumps_.push_back(std::move(jump));
}

void MasterEquation::rhs(double t, const ComplexMatrix& rho, ComplexMatrix& out) {
  const std::size_t n = dim_;
  h_.evaluate(t, h_now_);
  h_now_.multiply(rho, scratch_);  // X = H rho, and rho H = X^dagger

  const Complex* x = scratch_.data();
  Complex* o = out.data();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      o[i * n + k] = kMinusI * (x[i * n + k] - std::conj(x[k * n + i]));
    }
  }
  simd::kernels().weighted_add(n * n, weights_.data(), rho.data(), o);

  const Complex* p = rho.data();
  for (const Jump& jump : jumps_) {
    const std::size_t m = jump.rows.size();
    for (std::size_t a = 0; a < m; ++a) {
      const Complex va = jump.rate * jump.vals[a];
      const Complex* prow = p + jump.src[a] * n;
      Complex* orow = o + jump.rows[a] * n;
      for (std::size_t b = 0; b < m; ++b) {
        orow[jump.rows[b]] += va * std::conj(jump.vals[b]) * prow[jump.src[b]];
      }
    }
  }
}

void MasterEquation::advance(ComplexMatrix& rho, double t0, double dt, std::size_t n_steps) {
  require(rho.rows() == dim_ && rho.cols() == dim_, ErrorKind::shape,
          "density matrix dimension mismatch");
  const std::size_t len = rho.size();
  const auto& kt = simd::kernels();
  const Complex half(0.5 * dt), full(dt), sixth(dt / 6.0), third(dt / 3.0);
  for (std::size_t step = 0; step < n_steps; ++step) {
    const double t = t0 + static_cast<double>(step) * dt;
    rhs(t, rho, k1_);
    stage_ = rho;
    kt.axpy(len, half, k1_.data(), stage_.data());
    rhs(t + 0.5 * dt, stage_, k2_);
    stage_ = rho;
    kt.axpy(len, half, k2_.data(), stage_.data());
    rhs(t + 0.5 * dt, stage_, k3_);
    stage_ = rho;
    kt.axpy(len, full, k3_.data(), stage_.data());
    rhs(t + dt, stage_, k4_);
    kt.axpy(len, sixth, k1_.data(), rho.data());
    kt.axpy(len, third, k2_.data(), rho.data());
    kt.axpy(len, third, k3_.data(), rho.data());
    kt.axpy(len, sixth, k4_.data(), rho.data());
  }
}

DensityMatrix evolve_master(const DensityMatrix& rho0, const HarmonicOperator& h,
                            const NoiseModel& noise, const HilbertSpace& space, double duration,
                            const IntegratorConfig& cfg, std::size_t segments,
                            const SegmentObserver& observer) {
  check_same_dim(rho0.matrix(), space);
  require(std::isfinite(duration) && duration >= 0.0, ErrorKind::invalid_argument,
          "duration must be finite and non-negative");
  require(segments >= 1, ErrorKind::invalid_argument, "segments must be at least 1");
  if (duration == 0.0) return rho0;

  MasterEquation eq(h, noise, space);
  const double dt_max = resolve_dt(cfg, eq.max_frequency());
  const std::size_t per = step_count(duration / static_cast<double>(segments), dt_max);
  const double dt = duration / static_cast<double>(per * segments);

  ComplexMatrix rho = rho0.matrix();
  for (std::size_t s = 0; s < segments; ++s) {
    eq.advance(rho, static_cast<double>(s * per) * dt, dt, per);
    if (observer) observer(static_cast<double>((s + 1) * per) * dt, rho);
  }

  const double drift = std::abs(rho.trace().real() - 1.0);
  require(std::isfinite(drift) && drift <= 1e-6, ErrorKind::step_size,
          "trace drifted by " + std::to_string(drift) + "; reduce dt");
  ComplexMatrix sym = rho + rho.adjoint();
  sym *= Complex(0.5);
  return DensityMatrix(std::move(sym));
}

StateVector evolve_unitary(const StateVector& psi0, const HarmonicOperator& h, double duration,
                           const IntegratorConfig& cfg) {
  const std::size_t n = psi0.dim();
  require(h.dim() == n, ErrorKind::shape, "Hamiltonian dimension mismatch");
  require(std::isfinite(duration) && duration >= 0.0, ErrorKind::invalid_argument,
          "duration must be finite and non-negative");
  if (duration == 0.0) return psi0;

  const HarmonicCsr hc(h.terms(), n);
  CsrMatrix hn = hc.pattern();
  const double dt_max = resolve_dt(cfg, std::max(h.max_frequency(), h.norm_bound()));
  const std::size_t steps = step_count(duration, dt_max);
  const double dt = duration / static_cast<double>(steps);

  ComplexVector psi(psi0.amplitudes().begin(), psi0.amplitudes().end());
  ComplexVector k1(n), k2(n), k3(n), k4(n), stage(n);
  auto f = [&](double t, const ComplexVector& in, ComplexVector& out) {
    hc.evaluate(t, hn);
    hn.multiply(in, out);
    for (Complex& v : out) v *= kMinusI;
  };
  for (std::size_t step = 0; step < steps; ++step) {
    const double t = static_cast<double>(step) * dt;
    f(t, psi, k1);
    for (std::size_t i = 0; i < n; ++i) stage[i] = psi[i] + 0.5 * dt * k1[i];
    f(t + 0.5 * dt, stage, k2);
    for (std::size_t i = 0; i < n; ++i) stage[i] = psi[i] + 0.5 * dt * k2[i];
    f(t + 0.5 * dt, stage, k3);
    for (std::size_t i = 0; i < n; ++i) stage[i] = psi[i] + dt * k3[i];
    f(t + dt, stage, k4);
    for (std::size_t i = 0; i < n; ++i) {
      psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
  }

  const double drift = std::abs(norm(psi) - 1.0);
  require(std::isfinite(drift) && drift <= 1e-6, ErrorKind::step_size,
          "state norm drifted by " + std::to_string(drift) + "; reduce dt");
  return StateVector::normalized(std::move(psi));
}

std::pair<Complex, Complex> raman_analytic(double t, double g, double delta,
                                           bool original_picture) {
  require(delta != 0.0, ErrorKind::singular_detuning, "Raman coupling needs delta != 0");
  const double theta = g * g * t / delta;
  Complex a(std::cos(theta), 0.0);
  Complex b(0.0, std::sin(theta));
  if (original_picture) {
    const Complex phase = std::polar(1.0, theta);
    a *= phase;
    b *= phase;
  }
  return {a, b};
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols() && a.is_square(), ErrorKind::shape,
          "trace distance needs square matrices of equal size");
  double s = 0.0;
  for (double ev : hermitian_eigenvalues(a - b)) s += std::abs(ev);
  return 0.5 * s;
}

double purity(const ComplexMatrix& rho) {
  require(rho.is_square(), ErrorKind::shape, "purity needs a square matrix");
  // Tr(rho^2) = sum |rho_ik|^2 for Hermitian rho.
  double s = 0.0;
  for (const Complex& v : rho.values()) s += std::norm(v);
  return s;
}

double min_eigenvalue(const ComplexMatrix& rho) {
  const auto ev = hermitian_eigenvalues(rho);
  return ev.empty() ? 0.0 : ev.front();
}

}  // namespace ghz
