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

#include <atomic>
#include <cstdlib>
#include <string>

#include "ghz/error.hpp"
#include "kernels_impl.hpp"

namespace ghz::simd {
namespace {

bool cpu_has_avx2() {
#if defined(GHZSIM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa best_isa() {
  if (cpu_has_avx2()) return Isa::avx2;
#if defined(GHZSIM_HAVE_NEON)
  return Isa::neon;
#else
  return Isa::scalar;
#endif
}

const KernelTable* initial_table() {
  Isa isa = best_isa();
  if (const char* env = std::getenv("GHZSIM_SIMD"); env != nullptr && *env != '\0') {
    const std::string requested(env);
    if (requested != "auto") isa = parse_isa(requested);
  }
  return &kernels_for(isa);
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  if (name == "neon") return Isa::neon;
  fail(ErrorKind::config, "unknown SIMD variant '" + std::string(name) +
                              "' (expected scalar, avx2, neon or auto)");
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return cpu_has_avx2();
    case Isa::neon:
#if defined(GHZSIM_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::vector<Isa> supported_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (isa_supported(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& kernels_for(Isa isa) {
  require(isa_supported(isa), ErrorKind::invalid_argument,
          "SIMD variant '" + std::string(isa_name(isa)) + "' is not available on this CPU/build");
  switch (isa) {
#if defined(GHZSIM_HAVE_AVX2)
    case Isa::avx2: return detail::avx2_table();
#endif
#if defined(GHZSIM_HAVE_NEON)
    case Isa::neon: return detail::neon_table();
#endif
    default: return detail::scalar_table();
  }
}

const KernelTable& kernels() { return *active_slot().load(std::memory_order_acquire); }

Isa active_isa() { return kernels().isa; }

void set_active_isa(Isa isa) { active_slot().store(&kernels_for(isa), std::memory_order_release); }

}  // namespace ghz::simd
