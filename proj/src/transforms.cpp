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

#include "sigverify/transforms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "sigverify/error.hpp"

namespace sigverify {

namespace {

using cplx = std::complex<double>;

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

cplx eval_poly(const std::vector<double>& coeffs, cplx z) {
  // coeffs[k] multiplies z^k
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// Durand-Kerner on a real polynomial, followed by a few Newton polishing
// steps on each root.
std::vector<cplx> poly_roots(std::vector<double> coeffs) {
  const std::size_t deg = coeffs.size() - 1;
  if (deg == 0) return {};
  const double lead = coeffs.back();
  for (double& c : coeffs) c /= lead;

  std::vector<cplx> roots(deg);
  const cplx seed(0.4, 0.9);
  cplx p = 1.0;
  for (auto& r : roots) {
    p *= seed;
    r = p;
  }
  for (int iter = 0; iter < 2000; ++iter) {
    double change = 0.0;
    for (std::size_t i = 0; i < deg; ++i) {
      cplx denom = 1.0;
      for (std::size_t j = 0; j < deg; ++j) {
        if (j != i) denom *= roots[i] - roots[j];
      }
      const cplx step = eval_poly(coeffs, roots[i]) / denom;
      roots[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15) break;
  }

  std::vector<double> deriv(deg);
  for (std::size_t k = 1; k <= deg; ++k) deriv[k - 1] = coeffs[k] * static_cast<double>(k);
  for (auto& r : roots) {
    for (int i = 0; i < 3; ++i) {
      const cplx d = eval_poly(deriv, r);
      if (std::abs(d) == 0.0) break;
      r -= eval_poly(coeffs, r) / d;
    }
  }
  return roots;
}

std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Half-point symmetric extension by `pad` samples on both sides.
std::vector<double> extend_symmetric(std::span<const double> x, std::size_t pad) {
  const std::size_t n = x.size();
  std::vector<double> ext(n + 2 * pad);
  for (std::size_t i = 0; i < pad; ++i) {
    ext[pad - 1 - i] = x[i];
    ext[pad + n + i] = x[n - 1 - i];
  }
  std::copy(x.begin(), x.end(), ext.begin() + static_cast<std::ptrdiff_t>(pad));
  return ext;
}

}  // namespace

WaveletFilterBank make_daubechies(int order) {
  if (order < 1 || order > 20) {
    throw Error(ErrorCode::InvalidArgument,
                "Daubechies order must be in [1, 20], got " + std::to_string(order));
  }
  // |L(w)|^2 = P(sin^2(w/2)), P(y) = sum_k C(N-1+k, k) y^k.
  std::vector<double> p(static_cast<std::size_t>(order));
  for (int k = 0; k < order; ++k) p[static_cast<std::size_t>(k)] = binomial(order - 1 + k, k);

  // Each root y of P gives a reciprocal pair z, 1/z of
  // z^2 - (2 - 4y) z + 1 = 0; keep the one inside the unit circle.
  std::vector<cplx> h = {1.0};
  for (const cplx& y : poly_roots(p)) {
    const cplx b = 2.0 - 4.0 * y;
    const cplx disc = std::sqrt(b * b - 4.0);
    cplx z = (b + disc) / 2.0;
    if (std::abs(z) > 1.0) z = (b - disc) / 2.0;
    h = poly_mul(h, {1.0, -z});
  }
  for (int i = 0; i < order; ++i) h = poly_mul(h, {1.0, 1.0});

  const std::size_t len = h.size();
  std::vector<double> rec_lo(len);
  double sum = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    rec_lo[k] = h[k].real();
    sum += rec_lo[k];
  }
  for (double& v : rec_lo) v *= std::numbers::sqrt2 / sum;

  WaveletFilterBank fb;
  fb.name = "db" + std::to_string(order);
  fb.lo_d.assign(rec_lo.rbegin(), rec_lo.rend());
  fb.hi_d.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    fb.hi_d[k] = (k % 2 == 0 ? 1.0 : -1.0) * fb.lo_d[len - 1 - k];
  }
  fb.lo_r.assign(fb.lo_d.rbegin(), fb.lo_d.rend());
  fb.hi_r.assign(fb.hi_d.rbegin(), fb.hi_d.rend());
  return fb;
}

WaveletFilterBank make_db4() { return make_daubechies(4); }

WaveletFilterBank make_wavelet(std::string_view name) {
  if (name.size() > 2 && name.substr(0, 2) == "db") {
    int order = 0;
    const auto* first = name.data() + 2;
    const auto* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, order);
    if (ec == std::errc() && ptr == last) return make_daubechies(order);
  }
  throw Error(ErrorCode::InvalidArgument,
              "unsupported wavelet '" + std::string(name) + "' (expected dbN)");
}

std::size_t dwt_output_length(std::size_t n, std::size_t filter_length) {
  return (n + filter_length - 1) / 2;
}

DwtResult dwt_single(std::span<const double> signal, const WaveletFilterBank& fb) {
  const std::size_t L = fb.length();
  const std::size_t n = signal.size();
  if (n < L) {
    throw Error(ErrorCode::SignalTooShort,
                "signal length " + std::to_string(n) +
                    " is shorter than the filter length " + std::to_string(L));
  }
  const std::vector<double> ext = extend_symmetric(signal, L - 1);
  const std::size_t out_len = dwt_output_length(n, L);
  DwtResult r;
  r.approx.resize(out_len);
  r.detail.resize(out_len);
  // Output i is the full-convolution sample at position 2i+1; in the padded
  // buffer that position is shifted by L-1.
  for (std::size_t i = 0; i < out_len; ++i) {
    const std::size_t base = 2 * i + 1 + (L - 1);
    double a = 0.0;
    double d = 0.0;
    for (std::size_t j = 0; j < L; ++j) {
      const double v = ext[base - j];
      a += fb.lo_d[j] * v;
      d += fb.hi_d[j] * v;
    }
    r.approx[i] = a;
    r.detail[i] = d;
  }
  return r;
}

std::vector<double> idwt_single(std::span<const double> approx,
                                std::span<const double> detail,
                                const WaveletFilterBank& fb,
                                std::size_t original_length) {
  const std::size_t L = fb.length();
  if (approx.size() != detail.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "approximation and detail lengths differ (" +
                    std::to_string(approx.size()) + " vs " +
                    std::to_string(detail.size()) + ")");
  }
  if (original_length < L || dwt_output_length(original_length, L) != approx.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "original length " + std::to_string(original_length) +
                    " is inconsistent with " + std::to_string(approx.size()) +
                    " coefficients");
  }
  // x[m] = sum_i a[i] lo_r[m + L - 2 - 2i] + d[i] hi_r[m + L - 2 - 2i]
  std::vector<double> out(original_length, 0.0);
  for (std::size_t m = 0; m < original_length; ++m) {
    const std::size_t shift = m + L - 2;
    // valid i satisfy 0 <= shift - 2i <= L-1
    const std::size_t i_lo = shift >= L - 1 ? (shift - (L - 1) + 1) / 2 : 0;
    const std::size_t i_hi = std::min(shift / 2, approx.size() - 1);
    double acc = 0.0;
    for (std::size_t i = i_lo; i <= i_hi; ++i) {
      const std::size_t k = shift - 2 * i;
      acc += approx[i] * fb.lo_r[k] + detail[i] * fb.hi_r[k];
    }
    out[m] = acc;
  }
  return out;
}

WaveletCoeffs wavedec(std::span<const double> signal, const WaveletFilterBank& fb,
                      int levels) {
  if (levels < 1) {
    throw Error(ErrorCode::InvalidArgument, "levels must be >= 1");
  }
  WaveletCoeffs c;
  c.original_length = signal.size();
  c.level = levels;
  std::vector<double> current(signal.begin(), signal.end());
  for (int lvl = 1; lvl <= levels; ++lvl) {
    if (current.size() < fb.length()) {
      throw Error(ErrorCode::TooManyLevels,
                  "level " + std::to_string(lvl) + " would need " +
                      std::to_string(fb.length()) + " samples, have " +
                      std::to_string(current.size()));
    }
    DwtResult r = dwt_single(current, fb);
    c.details.push_back(std::move(r.detail));
    current = std::move(r.approx);
  }
  c.approx = std::move(current);
  return c;
}

std::vector<double> waverec(const WaveletCoeffs& coeffs, const WaveletFilterBank& fb) {
  if (coeffs.level < 1 || coeffs.details.size() != static_cast<std::size_t>(coeffs.level)) {
    throw Error(ErrorCode::LengthMismatch, "coefficient level count is inconsistent");
  }
  std::vector<double> a = coeffs.approx;
  for (int lvl = coeffs.level; lvl >= 1; --lvl) {
    const std::size_t target = lvl > 1 ? coeffs.details[static_cast<std::size_t>(lvl - 2)].size()
                                       : coeffs.original_length;
    a = idwt_single(a, coeffs.details[static_cast<std::size_t>(lvl - 1)], fb, target);
  }
  return a;
}

DctCoeffs dct(std::span<const double> signal) {
  const std::size_t n = signal.size();
  if (n == 0) throw Error(ErrorCode::EmptyInput, "dct of an empty sequence");
  const double nn = static_cast<double>(n);
  DctCoeffs c;
  c.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += signal[i] *
             std::cos(std::numbers::pi * static_cast<double>((2 * i + 1) * k) / (2.0 * nn));
    }
    c.values[k] = (k == 0 ? std::sqrt(1.0 / nn) : std::sqrt(2.0 / nn)) * acc;
  }
  return c;
}

std::vector<double> idct(const DctCoeffs& coeffs) {
  const std::size_t n = coeffs.values.size();
  if (n == 0) throw Error(ErrorCode::EmptyInput, "idct of an empty sequence");
  const double nn = static_cast<double>(n);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = std::sqrt(1.0 / nn) * coeffs.values[0];
    for (std::size_t k = 1; k < n; ++k) {
      acc += std::sqrt(2.0 / nn) * coeffs.values[k] *
             std::cos(std::numbers::pi * static_cast<double>((2 * i + 1) * k) / (2.0 * nn));
    }
    x[i] = acc;
  }
  return x;
}

std::string_view to_string(PreprocessMode mode) {
  switch (mode) {
    case PreprocessMode::dwt: return "dwt";
    case PreprocessMode::dct: return "dct";
    case PreprocessMode::dwt_dct: return "dwt-dct";
  }
  return "unknown";
}

PreprocessMode parse_preprocess_mode(std::string_view text) {
  if (text == "dwt") return PreprocessMode::dwt;
  if (text == "dct") return PreprocessMode::dct;
  if (text == "dwt-dct" || text == "dwt_dct") return PreprocessMode::dwt_dct;
  throw Error(ErrorCode::InvalidArgument,
              "unknown preprocessing mode '" + std::string(text) +
                  "' (expected dwt, dct or dwt-dct)");
}

std::size_t preprocess_output_length(std::size_t n, const WaveletFilterBank& fb,
                                     int levels) {
  std::size_t len = n;
  for (int i = 0; i < levels; ++i) len = dwt_output_length(len, fb.length());
  return len;
}

std::vector<double> preprocess_channel(std::span<const double> channel,
                                       PreprocessMode mode,
                                       const WaveletFilterBank& fb,
                                       std::size_t expected_length, int levels) {
  if (channel.size() != expected_length) {
    throw Error(ErrorCode::BadLength,
                "channel has " + std::to_string(channel.size()) +
                    " samples, expected " + std::to_string(expected_length));
  }
  switch (mode) {
    case PreprocessMode::dwt:
      return wavedec(channel, fb, levels).approx;
    case PreprocessMode::dct: {
      auto c = dct(channel).values;
      c.resize(preprocess_output_length(channel.size(), fb, levels));
      return c;
    }
    case PreprocessMode::dwt_dct:
      return dct(wavedec(channel, fb, levels).approx).values;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown preprocessing mode");
}

}  // namespace sigverify
