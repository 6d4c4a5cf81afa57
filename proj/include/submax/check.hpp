// Copyright 2025 The Authors.
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

#ifndef SUBMAX_CHECK_HPP_
#define SUBMAX_CHECK_HPP_

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace submax {

// Relative tolerance used wherever an algorithm compares real values that
// the underlying math treats as exact.
inline constexpr double kCmpTol = 1e-9;

inline double cmp_scale(double a, double b) {
  return std::max({1.0, std::fabs(a), std::fabs(b)});
}

// a >= b up to relative tolerance.
inline bool approx_ge(double a, double b, double tol = kCmpTol) {
  return a >= b - tol * cmp_scale(a, b);
}

// a <= b up to relative tolerance.
inline bool approx_le(double a, double b, double tol = kCmpTol) {
  return b >= a - tol * cmp_scale(a, b);
}

inline bool approx_eq(double a, double b, double tol = kCmpTol) {
  return std::fabs(a - b) <= tol * cmp_scale(a, b);
}

// Always-on internal invariant check; violations are bugs, not bad input.
#define SUBMAX_CHECK(cond, msg)                                          \
  do {                                                                   \
    if (!(cond)) {                                                       \
      std::ostringstream oss_;                                           \
      oss_ << "internal invariant violated at " << __FILE__ << ":"       \
           << __LINE__ << ": " << msg;                                   \
      throw std::logic_error(oss_.str());                                \
    }                                                                    \
  } while (0)

}  // namespace submax

#endif  // SUBMAX_CHECK_HPP_
