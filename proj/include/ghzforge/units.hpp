// Copyright 2026 The ghzforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Physical constants and the unit conventions used throughout the library.
//
// Internally every frequency is an angular frequency in rad/ns with hbar = 1,
// and every time is in ns. Circuit quantities (inductances, currents) are
// carried in the engineering units the device literature uses and converted
// to SI only inside the helpers below.

#ifndef GHZFORGE_UNITS_HPP
#define GHZFORGE_UNITS_HPP

#include <numbers>

namespace ghzforge::units {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// CODATA 2018, J s.
inline constexpr double kReducedPlanck = 1.054571817e-34;
/// CODATA 2018, J s.
inline constexpr double kPlanck = 6.62607015e-34;
/// CODATA 2018, C.
inline constexpr double kElementaryCharge = 1.602176634e-19;
/// Superconducting flux quantum h/2e, Wb.
inline constexpr double kFluxQuantum = 2.067833848e-15;

inline constexpr double kPicohenry = 1e-12;
inline constexpr double kNanohenry = 1e-9;
inline constexpr double kMicroampere = 1e-6;
inline constexpr double kNanoampere = 1e-9;
inline constexpr double kNanosecond = 1e-9;

/// Ordinary frequency in GHz to angular frequency in rad/ns.
constexpr double ghz_to_angular(double ghz) { return kTwoPi * ghz; }

/// Angular frequency in rad/ns to ordinary frequency in GHz.
constexpr double angular_to_ghz(double rad_per_ns) { return rad_per_ns / kTwoPi; }

/// Energy in joules to angular frequency in rad/ns (E / hbar).
constexpr double joule_to_angular(double joule) {
  return joule / kReducedPlanck * kNanosecond;
}

/// Angular frequency in rad/ns to energy in joules.
constexpr double angular_to_joule(double rad_per_ns) {
  return rad_per_ns / kNanosecond * kReducedPlanck;
}

}  // namespace ghzforge::units

#endif  // GHZFORGE_UNITS_HPP
