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

#include "sigverify/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sigverify/error.hpp"

namespace sigverify {

std::string_view to_string(Label label) {
  return label == Label::genuine ? "genuine" : "forgery";
}

std::string_view to_string(SignatureSource source) {
  switch (source) {
    case SignatureSource::svc2004: return "svc2004";
    case SignatureSource::csv: return "csv";
    case SignatureSource::synthetic: return "synthetic";
  }
  return "unknown";
}

std::string_view channel_name(Channel c) {
  static constexpr std::array<std::string_view, kChannelCount> names = {
      "X", "Y", "PRESSURE", "AZIMUTH", "ALTITUDE",
      "DX", "DY", "DPRESSURE", "SPEED"};
  return names[static_cast<std::size_t>(c)];
}

const RawSignature& validate(const RawSignature& sig) {
  const auto& pts = sig.points;
  if (pts.size() < 2) {
    throw Error(ErrorCode::TooFewPoints,
                "signature has " + std::to_string(pts.size()) +
                    " point(s), need at least 2",
                pts.size());
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!(pts[i].pressure >= 0.0)) {
      throw Error(ErrorCode::NegativePressure,
                  "negative pressure at index " + std::to_string(i), i);
    }
    if (i > 0 && pts[i].t < pts[i - 1].t) {
      throw Error(ErrorCode::NonMonotonicTime,
                  "timestamp decreases at index " + std::to_string(i), i);
    }
  }
  return sig;
}

std::vector<double> resample(std::span<const double> channel, std::size_t n) {
  if (channel.size() < 2 || n < 2) {
    throw Error(ErrorCode::LengthTooShort,
                "resample needs input length >= 2 and n >= 2");
  }
  std::vector<double> out(n);
  const std::size_t last = channel.size() - 1;
  const double step = static_cast<double>(last) / static_cast<double>(n - 1);
  out.front() = channel.front();
  out.back() = channel.back();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double pos = static_cast<double>(i) * step;
    auto lo = static_cast<std::size_t>(std::floor(pos));
    if (lo >= last) lo = last - 1;
    const double frac = pos - static_cast<double>(lo);
    out[i] = channel[lo] + frac * (channel[lo + 1] - channel[lo]);
  }
  return out;
}

std::vector<double> normalize_z(std::span<const double> channel) {
  const auto n = static_cast<double>(channel.size());
  std::vector<double> out(channel.size(), 0.0);
  if (channel.empty()) return out;

  const double mean = std::accumulate(channel.begin(), channel.end(), 0.0) / n;
  double ss = 0.0;
  double scale = 0.0;
  for (double v : channel) {
    ss += (v - mean) * (v - mean);
    scale = std::max(scale, std::abs(v));
  }
  const double sd = std::sqrt(ss / n);
  // A constant channel leaves rounding residue in (v - mean); treat any
  // spread below 1e-12 of the channel magnitude as zero variance.
  if (sd <= 1e-12 * std::max(1.0, scale)) return out;
  for (std::size_t i = 0; i < channel.size(); ++i) {
    out[i] = (channel[i] - mean) / sd;
  }
  return out;
}

std::vector<double> smooth(std::span<const double> channel, std::size_t window) {
  if (window == 0 || window % 2 == 0 || window > channel.size()) {
    throw Error(ErrorCode::BadWindow,
                "smoothing window must be odd and <= length, got " +
                    std::to_string(window));
  }
  const auto n = static_cast<std::ptrdiff_t>(channel.size());
  const auto half = static_cast<std::ptrdiff_t>(window / 2);
  std::vector<double> out(channel.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::ptrdiff_t k = i - half; k <= i + half; ++k) {
      acc += channel[static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(k, 0, n - 1))];
    }
    out[static_cast<std::size_t>(i)] = acc / static_cast<double>(window);
  }
  return out;
}

namespace {

std::vector<double> forward_difference(const std::vector<double>& v) {
  std::vector<double> d(v.size());
  for (std::size_t i = 0; i + 1 < v.size(); ++i) d[i] = v[i + 1] - v[i];
  d.back() = v.size() >= 2 ? d[v.size() - 2] : 0.0;
  return d;
}

}  // namespace

ChannelSet derive_raw_channels(const RawSignature& sig,
                               const ChannelOptions& opts) {
  validate(sig);
  if (opts.resample_length < 8) {
    throw Error(ErrorCode::InvalidArgument,
                "resample length must be >= 8, got " +
                    std::to_string(opts.resample_length));
  }

  const std::size_t n = sig.points.size();
  ChannelSet raw;
  for (auto& ch : raw.channels) ch.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = sig.points[i];
    raw[Channel::x][i] = p.x;
    raw[Channel::y][i] = p.y;
    raw[Channel::pressure][i] = p.pressure;
    raw[Channel::azimuth][i] = p.azimuth;
    raw[Channel::altitude][i] = p.altitude;
  }
  if (opts.smooth_window > 1) {
    for (Channel c : {Channel::x, Channel::y, Channel::pressure,
                      Channel::azimuth, Channel::altitude}) {
      raw[c] = smooth(raw[c], std::min(opts.smooth_window,
                                       n % 2 == 1 ? n : n - 1));
    }
  }
  raw[Channel::dx] = forward_difference(raw[Channel::x]);
  raw[Channel::dy] = forward_difference(raw[Channel::y]);
  raw[Channel::dpressure] = forward_difference(raw[Channel::pressure]);
  for (std::size_t i = 0; i < n; ++i) {
    raw[Channel::speed][i] = std::hypot(raw[Channel::dx][i], raw[Channel::dy][i]);
  }

  ChannelSet out;
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    out.channels[c] = resample(raw.channels[c], opts.resample_length);
  }
  return out;
}

ChannelSet derive_channels(const RawSignature& sig, const ChannelOptions& opts) {
  ChannelSet cs = derive_raw_channels(sig, opts);
  if (opts.normalize) {
    for (auto& ch : cs.channels) ch = normalize_z(ch);
  }
  return cs;
}

ChannelSet derive_channels(const RawSignature& sig, std::size_t n_resample) {
  ChannelOptions opts;
  opts.resample_length = n_resample;
  return derive_channels(sig, opts);
}

}  // namespace sigverify
