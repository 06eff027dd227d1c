// Copyright 2026 The sigverify Authors
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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <catch_amalgamated.hpp>

#include "sigverify/error.hpp"
#include "sigverify/rng.hpp"
#include "sigverify/signal.hpp"

namespace sigverify::testing {

/// Runs fn and returns the code of the sigverify::Error it throws.
template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected sigverify::Error");
  return ErrorCode::InvalidArgument;
}

inline std::vector<double> random_vector(SplitMix64& rng, std::size_t n, double lo = -1.0,
                                         double hi = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

/// Points at t = 0, 10, 20, ... with the given coordinates and pressures.
inline RawSignature make_signature(const std::vector<double>& x, const std::vector<double>& y,
                                   const std::vector<double>& pressure = {}) {
  RawSignature sig;
  sig.signer_id = "t";
  for (std::size_t i = 0; i < x.size(); ++i) {
    SamplePoint p;
    p.x = x[i];
    p.y = y[i];
    p.t = 10.0 * static_cast<double>(i);
    p.pressure = pressure.empty() ? 100.0 : pressure[i];
    sig.points.push_back(p);
  }
  return sig;
}

inline RawSignature random_signature(SplitMix64& rng, std::size_t n) {
  RawSignature sig;
  sig.signer_id = "r";
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    SamplePoint p;
    p.x = rng.uniform(0, 1000);
    p.y = rng.uniform(0, 1000);
    t += rng.uniform(5, 15);
    p.t = t;
    p.pressure = rng.uniform(0, 1023);
    p.azimuth = rng.uniform(0, 360);
    p.altitude = rng.uniform(30, 90);
    sig.points.push_back(p);
  }
  return sig;
}

/// Fresh empty directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const std::filesystem::path dir = std::filesystem::path(SIGVERIFY_TEST_TMP) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace sigverify::testing
