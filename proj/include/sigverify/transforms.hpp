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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sigverify {

/// Orthogonal two-channel filter bank. Decomposition filters are applied by
/// convolution; reconstruction filters are their time reverses and
/// hi_d[k] = (-1)^k * lo_d[L-1-k].
struct WaveletFilterBank {
  std::string name;
  std::vector<double> lo_d;
  std::vector<double> hi_d;
  std::vector<double> lo_r;
  std::vector<double> hi_r;

  std::size_t length() const { return lo_d.size(); }
};

/// Daubechies bank with `order` vanishing moments (filter length 2*order),
/// built by spectral factorization of the Daubechies half-band polynomial and
/// keeping the minimum-phase root set.
WaveletFilterBank make_daubechies(int order);

/// Daubechies order 4: eight taps, four vanishing moments.
WaveletFilterBank make_db4();

/// Parses "db<N>" and returns make_daubechies(N).
WaveletFilterBank make_wavelet(std::string_view name);

/// floor((n + L - 1) / 2), the per-level coefficient count.
std::size_t dwt_output_length(std::size_t n, std::size_t filter_length);

struct DwtResult {
  std::vector<double> approx;
  std::vector<double> detail;
};

/// One analysis level: half-point symmetric extension by L-1 samples, full
/// convolution, keep odd 0-based outputs. Throws SignalTooShort if n < L.
DwtResult dwt_single(std::span<const double> signal, const WaveletFilterBank& fb);

/// Inverse of dwt_single for a signal of `original_length` samples.
std::vector<double> idwt_single(std::span<const double> approx,
                                std::span<const double> detail,
                                const WaveletFilterBank& fb,
                                std::size_t original_length);

struct WaveletCoeffs {
  std::vector<double> approx;
  /// details[0] is the finest level (level 1).
  std::vector<std::vector<double>> details;
  int level = 0;
  std::size_t original_length = 0;
};

/// Mallat pyramid: repeated dwt_single on the approximation.
WaveletCoeffs wavedec(std::span<const double> signal,
                      const WaveletFilterBank& fb, int levels);
std::vector<double> waverec(const WaveletCoeffs& coeffs,
                            const WaveletFilterBank& fb);

struct DctCoeffs {
  std::vector<double> values;
};

/// Orthonormal DCT-II by direct evaluation.
DctCoeffs dct(std::span<const double> signal);
/// Orthonormal DCT-III, the exact inverse of dct().
std::vector<double> idct(const DctCoeffs& coeffs);

enum class PreprocessMode { dwt, dct, dwt_dct };

std::string_view to_string(PreprocessMode mode);
/// Accepts "dwt", "dct", "dwt-dct" (also "dwt_dct").
PreprocessMode parse_preprocess_mode(std::string_view text);

/// Number of values preprocess_channel emits for a channel of length n.
std::size_t preprocess_output_length(std::size_t n, const WaveletFilterBank& fb,
                                     int levels = 1);

/// Reduces one resampled channel to a fixed-length coefficient block:
///   dwt     -> approximation coefficients after `levels` levels
///   dct     -> leading DCT coefficients of the channel, same count
///   dwt_dct -> DCT of the approximation coefficients
/// Throws BadLength if the channel is not `expected_length` long.
std::vector<double> preprocess_channel(std::span<const double> channel,
                                       PreprocessMode mode,
                                       const WaveletFilterBank& fb,
                                       std::size_t expected_length = 100,
                                       int levels = 1);

}  // namespace sigverify
