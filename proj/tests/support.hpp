#pragma once

#include <random>
#include <vector>

#include "kerrcomm/core.hpp"
#include "kerrcomm/dynamics.hpp"
#include "kerrcomm/steady_state.hpp"

namespace kerrcomm::testing {

// Reference device: 40 MHz phonon, MHz linewidths, 10 mK. Detunings in omega_b units.
inline EffectiveInputs reference_inputs() {
  EffectiveInputs in;
  in.delta_a = -1.0;
  in.delta_m_eff = -1.0;
  in.delta_c_eff = 1.0;
  in.delta_k = 0.0;
  return in;
}

// Stable operating points with reference rates and detunings drawn from
// [-2, 2] omega_b. Deterministic for a given seed.
inline std::vector<EffectiveInputs> random_stable_points(std::size_t count,
                                                         std::uint64_t seed = 20240611) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> detuning(-2.0, 2.0);
  std::uniform_real_distribution<double> kerr(-0.2, 0.2);
  std::vector<EffectiveInputs> out;
  out.reserve(count);
  while (out.size() < count) {
    EffectiveInputs in = reference_inputs();
    in.delta_a = detuning(rng);
    in.delta_m_eff = detuning(rng);
    in.delta_c_eff = detuning(rng);
    in.delta_k = kerr(rng);
    const auto dd = build_normalized(operating_point_direct(in));
    if (is_stable(dd.drift).stable) out.push_back(in);
  }
  return out;
}

}  // namespace kerrcomm::testing
