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

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sigverify {

/// One tablet sample. `t` is in milliseconds.
struct SamplePoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
  double pressure = 0.0;
  double azimuth = 0.0;
  double altitude = 0.0;
  bool pen_down = true;

  bool operator==(const SamplePoint&) const = default;
};

enum class Label { genuine, forgery };
enum class SignatureSource { svc2004, csv, synthetic };

std::string_view to_string(Label label);
std::string_view to_string(SignatureSource source);

/// A sampled pen trajectory: x(n), y(n), t(n), p(n) plus pen orientation.
struct RawSignature {
  std::string signer_id;
  int sample_index = 1;
  Label label = Label::genuine;
  std::vector<SamplePoint> points;
  SignatureSource source = SignatureSource::csv;

  bool operator==(const RawSignature&) const = default;
};

/// Throws TooFewPoints, NonMonotonicTime or NegativePressure (with the first
/// offending index); returns the argument otherwise.
const RawSignature& validate(const RawSignature& sig);

enum class Channel : std::size_t {
  x,
  y,
  pressure,
  azimuth,
  altitude,
  dx,
  dy,
  dpressure,
  speed,
};

inline constexpr std::size_t kChannelCount = 9;
inline constexpr std::array<Channel, kChannelCount> kAllChannels = {
    Channel::x,       Channel::y,  Channel::pressure,
    Channel::azimuth, Channel::altitude, Channel::dx,
    Channel::dy,      Channel::dpressure, Channel::speed};

std::string_view channel_name(Channel c);

/// Nine equal-length analysis channels, in `Channel` order.
struct ChannelSet {
  std::array<std::vector<double>, kChannelCount> channels;

  const std::vector<double>& operator[](Channel c) const {
    return channels[static_cast<std::size_t>(c)];
  }
  std::vector<double>& operator[](Channel c) {
    return channels[static_cast<std::size_t>(c)];
  }
  std::size_t length() const { return channels[0].size(); }

  bool operator==(const ChannelSet&) const = default;
};

struct ChannelOptions {
  std::size_t resample_length = 100;
  /// 0 disables smoothing; otherwise an odd moving-average window applied to
  /// the five measured channels before differencing.
  std::size_t smooth_window = 0;
  bool normalize = true;
};

/// Measured channels, first differences and speed, resampled to
/// `opts.resample_length` but not z-scored.
ChannelSet derive_raw_channels(const RawSignature& sig,
                               const ChannelOptions& opts);

/// derive_raw_channels followed by per-channel z-scoring (when enabled).
ChannelSet derive_channels(const RawSignature& sig, const ChannelOptions& opts);
ChannelSet derive_channels(const RawSignature& sig, std::size_t n_resample);

/// Linear interpolation at n uniformly spaced positions over [0, len-1].
std::vector<double> resample(std::span<const double> channel, std::size_t n);

/// Population z-score. Channels whose standard deviation is negligible
/// relative to their magnitude map to all zeros.
std::vector<double> normalize_z(std::span<const double> channel);

/// Centered moving average; samples outside the range replicate the nearest
/// edge value.
std::vector<double> smooth(std::span<const double> channel, std::size_t window);

}  // namespace sigverify
