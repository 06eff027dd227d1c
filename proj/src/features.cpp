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

#include "sigverify/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sigverify/error.hpp"

namespace sigverify {

std::array<double, kStatsPerChannel> channel_stats(std::span<const double> channel) {
  if (channel.size() < 2) {
    throw Error(ErrorCode::TooShort, "statistics need at least 2 samples");
  }
  const auto n = static_cast<double>(channel.size());
  const double mean = std::accumulate(channel.begin(), channel.end(), 0.0) / n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : channel) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  const auto [lo, hi] = std::minmax_element(channel.begin(), channel.end());
  const double sd = std::sqrt(m2);
  const double scale = std::max({1.0, std::abs(*lo), std::abs(*hi)});
  double skew = 0.0;
  double kurt = 0.0;
  if (sd > 1e-12 * scale) {
    skew = m3 / (m2 * sd);
    kurt = m4 / (m2 * m2) - 3.0;
  }
  return {mean, sd, *lo, *hi, skew, kurt};
}

TransformFeatureVector assemble_transform_features(const ChannelSet& cs,
                                                   PreprocessMode mode,
                                                   const WaveletFilterBank& fb,
                                                   int levels) {
  TransformFeatureVector out;
  const std::size_t block = preprocess_output_length(cs.length(), fb, levels);
  out.values.reserve(kChannelCount * block);
  for (const auto& ch : cs.channels) {
    const auto coeffs = preprocess_channel(ch, mode, fb, cs.length(), levels);
    out.values.insert(out.values.end(), coeffs.begin(), coeffs.end());
  }
  return out;
}

StatFeatureVector assemble_stat_features(const ChannelSet& cs) {
  StatFeatureVector out;
  out.values.reserve(kStatFeatureLength);
  for (const auto& ch : cs.channels) {
    const auto s = channel_stats(ch);
    out.values.insert(out.values.end(), s.begin(), s.end());
  }
  return out;
}

namespace {

// Modified Gram-Schmidt of `v` against the first `count` rows of `basis`.
// Returns the norm left over before normalization.
double orthonormalize_against(const Matrix& basis, std::size_t count, std::span<double> v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t r = 0; r < count; ++r) {
      const double proj = dot(basis.row(r), v);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= proj * basis(r, j);
    }
  }
  const double norm = std::sqrt(dot(v, v));
  if (norm > 0.0) {
    for (double& x : v) x /= norm;
  }
  return norm;
}

}  // namespace

PcaModel pca_fit(const Matrix& samples, std::size_t k) {
  const std::size_t m = samples.rows();
  const std::size_t d = samples.cols();
  if (m < 2 || d == 0) {
    throw Error(ErrorCode::KTooLarge, "PCA needs at least 2 samples");
  }
  if (k < 1 || k > std::min(m - 1, d)) {
    throw Error(ErrorCode::KTooLarge,
                "retained components k=" + std::to_string(k) +
                    " must satisfy 1 <= k <= min(samples-1, dimension) = " +
                    std::to_string(std::min(m - 1, d)));
  }
  bool all_same = true;
  for (std::size_t r = 1; r < m && all_same; ++r) {
    all_same = std::equal(samples.row(r).begin(), samples.row(r).end(),
                          samples.row(0).begin());
  }
  if (all_same) {
    throw Error(ErrorCode::DegenerateData, "all PCA training rows are identical");
  }

  PcaModel model;
  model.mean.assign(d, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < d; ++j) model.mean[j] += samples(r, j);
  for (double& v : model.mean) v /= static_cast<double>(m);

  Matrix centered(m, d);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < d; ++j) centered(r, j) = samples(r, j) - model.mean[j];

  const double denom = static_cast<double>(m - 1);
  for (double v : centered.data()) model.total_variance += v * v;
  model.total_variance /= denom;

  model.loadings = Matrix(k, d);
  model.eigenvalues.assign(k, 0.0);
  std::size_t found = 0;

  if (d <= m) {
    Matrix cov(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) {
        double acc = 0.0;
        for (std::size_t r = 0; r < m; ++r) acc += centered(r, i) * centered(r, j);
        cov(i, j) = cov(j, i) = acc / denom;
      }
    }
    const SymmetricEigen eig = jacobi_eigen(cov);
    for (; found < k; ++found) {
      model.eigenvalues[found] = eig.values[found];
      std::copy(eig.vectors.row(found).begin(), eig.vectors.row(found).end(),
                model.loadings.row(found).begin());
    }
  } else {
    // Gram route: if G u = lambda u with G = Xc Xc^T / (m-1), then
    // v = Xc^T u / sqrt((m-1) lambda) is a unit covariance eigenvector.
    Matrix gram(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        gram(i, j) = gram(j, i) = dot(centered.row(i), centered.row(j)) / denom;
      }
    }
    const SymmetricEigen eig = jacobi_eigen(gram);
    const double cutoff = 1e-12 * std::max(eig.values.front(), 0.0);
    for (std::size_t c = 0; c < k && eig.values[c] > cutoff; ++c) {
      auto v = model.loadings.row(found);
      std::fill(v.begin(), v.end(), 0.0);
      for (std::size_t r = 0; r < m; ++r) {
        const double u = eig.vectors(c, r);
        for (std::size_t j = 0; j < d; ++j) v[j] += u * centered(r, j);
      }
      if (orthonormalize_against(model.loadings, found, v) > 0.0) {
        model.eigenvalues[found] = eig.values[c];
        ++found;
      }
    }
  }

  // Rank-deficient data: complete with zero-variance directions.
  for (std::size_t e = 0; found < k && e < d; ++e) {
    auto v = model.loadings.row(found);
    std::fill(v.begin(), v.end(), 0.0);
    v[e] = 1.0;
    if (orthonormalize_against(model.loadings, found, v) > 0.5) {
      model.eigenvalues[found] = 0.0;
      ++found;
    }
  }

  for (std::size_t c = 0; c < k; ++c) {
    auto v = model.loadings.row(c);
    const auto big = std::max_element(v.begin(), v.end(), [](double a, double b) {
      return std::abs(a) < std::abs(b);
    });
    if (*big < 0.0) {
      for (double& x : v) x = -x;
    }
    model.eigenvalues[c] = std::max(model.eigenvalues[c], 0.0);
  }
  return model;
}

std::vector<double> pca_project(const PcaModel& model, std::span<const double> a) {
  if (a.size() != model.d()) {
    throw Error(ErrorCode::DimensionMismatch,
                "PCA input has " + std::to_string(a.size()) +
                    " values, model expects " + std::to_string(model.d()));
  }
  std::vector<double> centered(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) centered[j] = a[j] - model.mean[j];
  std::vector<double> b(model.k());
  for (std::size_t c = 0; c < model.k(); ++c) b[c] = dot(model.loadings.row(c), centered);
  return b;
}

std::vector<double> pca_reconstruct(const PcaModel& model, std::span<const double> b) {
  if (b.size() != model.k()) {
    throw Error(ErrorCode::DimensionMismatch,
                "PCA scores have " + std::to_string(b.size()) +
                    " values, model retains " + std::to_string(model.k()));
  }
  std::vector<double> a = model.mean;
  for (std::size_t c = 0; c < model.k(); ++c)
    for (std::size_t j = 0; j < a.size(); ++j) a[j] += b[c] * model.loadings(c, j);
  return a;
}

ExplainedVariance explained_variance(const PcaModel& model) {
  if (model.k() == 0) {
    throw Error(ErrorCode::NotFitted, "explained variance of an unfitted PCA model");
  }
  ExplainedVariance ev;
  double running = 0.0;
  for (double lambda : model.eigenvalues) {
    const double r = model.total_variance > 0.0 ? lambda / model.total_variance : 0.0;
    running += r;
    ev.ratio.push_back(r);
    ev.cumulative.push_back(running);
  }
  return ev;
}

FeatureReducer FeatureReducer::fit(const Matrix& transform_rows, const Matrix& stat_rows,
                                   std::size_t transform_k, std::size_t stats_k) {
  if (transform_rows.rows() != stat_rows.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "transform and statistical training sets differ in size");
  }
  FeatureReducer r;
  r.transform_pca = pca_fit(transform_rows, transform_k);
  r.stats_pca = pca_fit(stat_rows, stats_k);

  const std::size_t m = transform_rows.rows();
  const std::size_t dim = transform_k + stats_k;
  Matrix projected(m, dim);
  for (std::size_t i = 0; i < m; ++i) {
    const auto bt = pca_project(r.transform_pca, transform_rows.row(i));
    const auto bs = pca_project(r.stats_pca, stat_rows.row(i));
    std::copy(bt.begin(), bt.end(), projected.row(i).begin());
    std::copy(bs.begin(), bs.end(), projected.row(i).begin() + static_cast<std::ptrdiff_t>(transform_k));
  }
  r.scale_mean.assign(dim, 0.0);
  r.scale_sd.assign(dim, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < dim; ++j) r.scale_mean[j] += projected(i, j);
  for (double& v : r.scale_mean) v /= static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const double dlt = projected(i, j) - r.scale_mean[j];
      r.scale_sd[j] += dlt * dlt;
    }
  for (double& v : r.scale_sd) {
    v = std::sqrt(v / static_cast<double>(m));
    if (v <= 1e-12) v = 1.0;  // zero-variance component: centre only
  }
  return r;
}

std::vector<double> FeatureReducer::reduce(std::span<const double> transform_features,
                                           std::span<const double> stat_features) const {
  if (!fitted()) {
    throw Error(ErrorCode::NotFitted, "feature reducer has not been fitted");
  }
  std::vector<double> out = pca_project(transform_pca, transform_features);
  const auto bs = pca_project(stats_pca, stat_features);
  out.insert(out.end(), bs.begin(), bs.end());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = (out[j] - scale_mean[j]) / scale_sd[j];
  return out;
}

}  // namespace sigverify
