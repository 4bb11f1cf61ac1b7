// SPDX-License-Identifier: Apache-2.0
//
// beamcb: data-driven analog beam codebook synthesis for antenna arrays
// Copyright (C) 2026 The beamcb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace beamcb {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kDegPerRad = 180.0 / std::numbers::pi;

/// Free-space wave impedance in ohms.
inline constexpr double kEta0 = 376.730313668;

/// Factor turning w^H M w (M in volt^2) into realized gain for unit incident power.
inline constexpr double kGainFactor = kTwoPi / kEta0;

/// Gains at or below zero are reported at this floor.
inline constexpr double kDbFloor = -200.0;

inline double deg2rad(double deg) { return deg / kDegPerRad; }
inline double rad2deg(double rad) { return rad * kDegPerRad; }

/// Linear power ratio to dB, floored at kDbFloor.
double to_db(double linear);
double from_db(double db);

/// Wraps an angle in radians onto [0, 2*pi).
double wrap_phase(double rad);

/// Base class for all recoverable library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. The message names the offending line when known.
class ParseError : public Error {
public:
  using Error::Error;
};

/// A direction was requested that is not a node of the E-field mesh.
class LookupError : public Error {
public:
  using Error::Error;
};

/// Invalid argument combination or violated precondition.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

} // namespace beamcb
