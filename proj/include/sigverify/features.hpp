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
#include <vector>

#include "sigverify/linalg.hpp"
#include "sigverify/signal.hpp"
#include "sigverify/transforms.hpp"

namespace sigverify {

inline constexpr std::size_t kCoefficientsPerChannel = 53;  // 100 samples, db4, one level
inline constexpr std::size_t kTransformFeatureLength = kChannelCount * kCoefficientsPerChannel;
inline constexpr std::size_t kStatsPerChannel = 6;
inline constexpr std::size_t kStatFeatureLength = kChannelCount * kStatsPerChannel;
inline constexpr std::size_t kDefaultTransformComponents = 8;
inline constexpr std::size_t kDefaultStatComponents = 2;

/// Nine coefficient blocks, channel-major (477 values under the defaults).
struct TransformFeatureVector {
  std::vector<double> values;
};

/// Six statistics per channel, channel-major (54 values).
struct StatFeatureVector {
  std::vector<double> values;
};

/// [mean, population sd, min, max, skewness, excess kurtosis]. Skewness and
/// kurtosis of a zero-variance channel are 0. Throws TooShort below 2 samples.
std::array<double, kStatsPerChannel> channel_stats(std::span<const double> channel);

TransformFeatureVector assemble_transform_features(const ChannelSet& cs,
                                                   PreprocessMode mode,
                                                   const WaveletFilterBank& fb,
                                                   int levels = 1);

StatFeatureVector assemble_stat_features(const ChannelSet& cs);

/// Principal directions of a training matrix. Projection of a d-vector a is
/// b_k = sum_j loadings(k, j) * (a_j - mean_j).
struct PcaModel {
  std::vector<double> mean;
  Matrix loadings;  // k x d, orthonormal rows
  std::vector<double> eigenvalues;  // descending, clamped at 0
  double total_variance = 0.0;      // trace of the sample covariance

  std::size_t k() const { return loadings.rows(); }
  std::size_t d() const { return loadings.cols(); }
};

/// Fits PCA on an m x d sample matrix (rows are observations), retaining k
/// directions. Uses the d x d covariance when d <= m and the m x m Gram
/// matrix otherwise. Each direction's largest-magnitude entry is positive.
/// Throws KTooLarge unless 1 <= k <= min(m-1, d) and DegenerateData if every
/// row is identical.
PcaModel pca_fit(const Matrix& samples, std::size_t k);

std::vector<double> pca_project(const PcaModel& model, std::span<const double> a);

/// mean + loadings^T b.
std::vector<double> pca_reconstruct(const PcaModel& model, std::span<const double> b);

struct ExplainedVariance {
  std::vector<double> ratio;
  std::vector<double> cumulative;
};

ExplainedVariance explained_variance(const PcaModel& model);

/// Two PCA projections (transform and statistical features) followed by a
/// per-coordinate z-score learned on the training rows.
struct FeatureReducer {
  PcaModel transform_pca;
  PcaModel stats_pca;
  std::vector<double> scale_mean;
  std::vector<double> scale_sd;

  bool fitted() const { return !scale_mean.empty(); }
  std::size_t output_dimension() const { return scale_mean.size(); }

  static FeatureReducer fit(const Matrix& transform_rows, const Matrix& stat_rows,
                            std::size_t transform_k = kDefaultTransformComponents,
                            std::size_t stats_k = kDefaultStatComponents);

  /// Throws NotFitted on a default-constructed reducer.
  std::vector<double> reduce(std::span<const double> transform_features,
                             std::span<const double> stat_features) const;
};

}  // namespace sigverify
