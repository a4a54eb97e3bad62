// Copyright 2026 kinksim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KINKSIM_CONSTANTS_HPP
#define KINKSIM_CONSTANTS_HPP

#include <cmath>
#include <numbers>

namespace kinksim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// CODATA 2018 exact / recommended values.
inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kEpsilon0 = 8.8541878128e-12;     // F/m
inline constexpr double kAmu = 1.66053906660e-27;         // kg

// e^2 / (4 pi eps0), J m
inline constexpr double kCoulombConstant =
    kElementaryCharge * kElementaryCharge /
    (4.0 * std::numbers::pi * kEpsilon0);

// 171Yb+ (AME2020 atomic mass, electron mass neglected at this precision)
inline constexpr double kYb171Mass = 170.936323 * kAmu;   // kg

inline constexpr double kRamanWavelength = 355e-9;        // m

// Effective Raman wavevector difference for the perpendicular beam geometry:
// |k1 - k2| = sqrt(2) * 2 pi / lambda.
inline double default_raman_dk() {
  return std::sqrt(2.0) * kTwoPi / kRamanWavelength;
}

}  // namespace kinksim

#endif
