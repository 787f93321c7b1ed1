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

#include "ghz/hilbert.hpp"

#include <cmath>

#include "ghz/error.hpp"

namespace ghz {

Level upper_level(LevelPair pair) {
  return pair == LevelPair::eg ? Level::e : Level::f;
}

Level lower_level(LevelPair pair) {
  return pair == LevelPair::fe ? Level::e : Level::g;
}

std::string to_string(Level level) {
  switch (level) {
    case Level::g: return "g";
    case Level::e: return "e";
    case Level::f: return "f";
  }
  return "?";
}

std::string to_string(LevelPair pair) {
  return to_string(upper_level(pair)) + to_string(lower_level(pair));
}

Slot cavity_slot(int cavity) {
  require(cavity >= 1 && cavity <= 3, ErrorKind::invalid_argument,
          "cavity index must be 1, 2 or 3 (got " + std::to_string(cavity) + ")");
  return static_cast<Slot>(cavity);
}

HilbertSpace::HilbertSpace(PhotonNumbers fock_cutoffs) : cutoffs_(fock_cutoffs), dim_(kQutritDim) {
  for (int n : cutoffs_) {
    require(n >= 1, ErrorKind::invalid_argument,
            "Fock cutoff must be >= 1 (got " + std::to_string(n) + ")");
    dim_ *= static_cast<std::size_t>(n + 1);
  }
}

std::size_t HilbertSpace::slot_dim(Slot slot) const {
  if (slot == Slot::qutrit) return kQutritDim;
  return static_cast<std::size_t>(cutoffs_[static_cast<std::size_t>(slot) - 1] + 1);
}

std::size_t HilbertSpace::index(Level level, PhotonNumbers photons) const {
  std::size_t idx = static_cast<std::size_t>(level);
  for (std::size_t j = 0; j < 3; ++j) {
    require(photons[j] >= 0 && photons[j] <= cutoffs_[j], ErrorKind::invalid_argument,
            "photon number " + std::to_string(photons[j]) + " in cavity " + std::to_string(j + 1) +
                " exceeds cutoff " + std::to_string(cutoffs_[j]));
    idx = idx * static_cast<std::size_t>(cutoffs_[j] + 1) + static_cast<std::size_t>(photons[j]);
  }
  return idx;
}

HilbertSpace::Label HilbertSpace::label(std::size_t index) const {
  require(index < dim_, ErrorKind::invalid_argument, "basis index out of range");
  Label out{};
  for (int j = 2; j >= 0; --j) {
    const auto d = static_cast<std::size_t>(cutoffs_[j] + 1);
    out.photons[j] = static_cast<int>(index % d);
    index /= d;
  }
  out.level = static_cast<Level>(index);
  return out;
}

StateVector::StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  const double n = norm(amplitudes_);
  require(std::abs(n - 1.0) <= 1e-12, ErrorKind::invalid_argument,
          "state vector is not normalized (norm " + std::to_string(n) + ")");
}

StateVector StateVector::normalized(ComplexVector amplitudes) {
  const double n = norm(amplitudes);
  require(n > 0.0 && std::isfinite(n), ErrorKind::invalid_argument,
          "cannot normalize a zero or non-finite vector");
  for (auto& a : amplitudes) a /= n;
  return StateVector(std::move(amplitudes));
}

OperatorMatrix annihilation(int n_max) {
  require(n_max >= 1, ErrorKind::invalid_argument,
          "Fock cutoff must be >= 1 (got " + std::to_string(n_max) + ")");
  const auto d = static_cast<std::size_t>(n_max + 1);
  OperatorMatrix a(d, d);
  for (std::size_t n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

OperatorMatrix qutrit_transition(Level lower, Level upper) {
  require(lower != upper, ErrorKind::invalid_argument,
          "qutrit transition needs two distinct levels (got " + to_string(lower) + " twice)");
  OperatorMatrix s(3, 3);
  s(static_cast<std::size_t>(upper), static_cast<std::size_t>(lower)) = 1.0;
  return s;
}

OperatorMatrix raising(LevelPair pair) {
  return qutrit_transition(lower_level(pair), upper_level(pair));
}

OperatorMatrix lowering(LevelPair pair) {
  return qutrit_transition(upper_level(pair), lower_level(pair));
}

OperatorMatrix sz_operator(LevelPair pair) {
  OperatorMatrix s(3, 3);
  s(static_cast<std::size_t>(upper_level(pair)), static_cast<std::size_t>(upper_level(pair))) = 1.0;
  s(static_cast<std::size_t>(lower_level(pair)), static_cast<std::size_t>(lower_level(pair))) = -1.0;
  return s;
}

OperatorMatrix qutrit_projector(Level level) {
  OperatorMatrix p(3, 3);
  p(static_cast<std::size_t>(level), static_cast<std::size_t>(level)) = 1.0;
  return p;
}

OperatorMatrix lift(const OperatorMatrix& op, Slot slot, const HilbertSpace& space) {
  const std::size_t d = space.slot_dim(slot);
  require(op.rows() == d && op.cols() == d, ErrorKind::shape,
          "operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
              " but the slot has dimension " + std::to_string(d));
  std::size_t before = 1;
  std::size_t after = 1;
  for (auto s : {Slot::qutrit, Slot::cavity1, Slot::cavity2, Slot::cavity3}) {
    if (s < slot) before *= space.slot_dim(s);
    if (s > slot) after *= space.slot_dim(s);
  }
  return kron(kron(OperatorMatrix::identity(before), op), OperatorMatrix::identity(after));
}

StateVector basis_state(Level level, PhotonNumbers photons, const HilbertSpace& space) {
  ComplexVector amps(space.dim());
  amps[space.index(level, photons)] = 1.0;
  return StateVector(std::move(amps));
}

}  // namespace ghz
