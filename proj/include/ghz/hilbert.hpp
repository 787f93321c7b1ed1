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

// Composite space: qutrit (g, e, f) x cavity 1 x cavity 2 x cavity 3, in that
// slot order, with the last slot varying fastest in the flat index.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "ghz/linalg.hpp"

namespace ghz {

enum class Level : std::uint8_t { g = 0, e = 1, f = 2 };

// A qutrit transition, named upper-then-lower as in S_fe, S_fg, S_eg.
enum class LevelPair : std::uint8_t { fe = 0, fg = 1, eg = 2 };

inline constexpr std::array<LevelPair, 3> kLevelPairs{LevelPair::fe, LevelPair::fg, LevelPair::eg};

Level upper_level(LevelPair pair);
Level lower_level(LevelPair pair);
std::string to_string(Level level);
std::string to_string(LevelPair pair);

enum class Slot : std::uint8_t { qutrit = 0, cavity1 = 1, cavity2 = 2, cavity3 = 3 };

// cavity is 1-based, as in the physics notation.
Slot cavity_slot(int cavity);

using PhotonNumbers = std::array<int, 3>;

class HilbertSpace {
 public:
  static constexpr std::size_t kQutritDim = 3;

  explicit HilbertSpace(PhotonNumbers fock_cutoffs = {2, 2, 2});

  const PhotonNumbers& fock_cutoffs() const noexcept { return cutoffs_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t slot_dim(Slot slot) const;

  std::size_t index(Level level, PhotonNumbers photons) const;

  struct Label {
    Level level;
    PhotonNumbers photons;
  };
  Label label(std::size_t index) const;

  bool operator==(const HilbertSpace&) const = default;

 private:
  PhotonNumbers cutoffs_;
  std::size_t dim_;
};

// Unit-norm amplitude vector.
class StateVector {
 public:
  // Throws if |norm - 1| > 1e-12.
  explicit StateVector(ComplexVector amplitudes);

  static StateVector normalized(ComplexVector amplitudes);

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  ComplexMatrix projector() const { return outer(amplitudes_, amplitudes_); }

 private:
  ComplexVector amplitudes_;
};

// (n_max+1) x (n_max+1) ladder matrix, <n-1|a|n> = sqrt(n).
OperatorMatrix annihilation(int n_max);

// |upper><lower| on the qutrit; its adjoint is the lowering operator.
OperatorMatrix qutrit_transition(Level lower, Level upper);

// S+ and S- for a transition pair.
OperatorMatrix raising(LevelPair pair);
OperatorMatrix lowering(LevelPair pair);

// S^z_{xy} = |x><x| - |y><y| for the pair xy.
OperatorMatrix sz_operator(LevelPair pair);

OperatorMatrix qutrit_projector(Level level);

// Identity on every slot except `slot`, which carries `op`.
OperatorMatrix lift(const OperatorMatrix& op, Slot slot, const HilbertSpace& space);

StateVector basis_state(Level level, PhotonNumbers photons, const HilbertSpace& space);

}  // namespace ghz
