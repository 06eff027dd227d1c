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
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sigverify/linalg.hpp"

namespace sigverify {

enum class KernelType { linear, rbf };

std::string_view to_string(KernelType k);
KernelType parse_kernel(std::string_view text);

struct SvmParams {
  KernelType kernel = KernelType::rbf;
  double C = 1.0;
  /// RBF width; unset means 1 / input dimension, resolved at training time.
  std::optional<double> gamma;
  double tol = 1e-3;
  /// Sweep budget is max_passes * 100 full passes over the training set.
  int max_passes = 100;
  std::uint64_t seed = 1;

  bool operator==(const SvmParams&) const = default;
};

/// Throws InvalidArgument unless C > 0, tol > 0, gamma (if set) > 0 and
/// max_passes >= 1.
void check_params(const SvmParams& p);

/// linear: <u, v>; rbf: exp(-gamma |u - v|^2). Throws DimensionMismatch.
double kernel_eval(const SvmParams& params, std::span<const double> u,
                   std::span<const double> v);

struct SvmModel {
  std::vector<std::vector<double>> support_vectors;
  std::vector<double> alphas_times_labels;
  double bias = 0.0;
  SvmParams params;  // gamma always resolved

  std::size_t dimension() const {
    return support_vectors.empty() ? 0 : support_vectors.front().size();
  }
};

struct SvmDiagnostics {
  int sweeps = 0;
  long pair_updates = 0;
  /// max over points of the KKT residual after training (<= tol when converged)
  double max_kkt_violation = 0.0;
  double dual_residual = 0.0;  // |sum alpha_i y_i|
  double training_accuracy = 0.0;
  std::size_t n_support = 0;
  std::size_t n_bounded = 0;
};

struct TrainedSvm {
  SvmModel model;
  SvmDiagnostics diagnostics;
};

/// Trains a binary C-SVM with SMO. Labels must be +1/-1 and both present
/// (SingleClass otherwise). Throws NoConvergence, with the remaining KKT gap in
/// the message, if the sweep budget runs out.
TrainedSvm svm_train(const Matrix& X, std::span<const int> y, const SvmParams& params);

/// sum_i alpha_i y_i K(sv_i, x) + bias.
double svm_decision(const SvmModel& model, std::span<const double> x);

/// KKT residual of one training point with decision value f, label y and
/// multiplier alpha: 0 when the margin condition for its alpha class holds.
double kkt_violation(double alpha, int y, double f, double C);

}  // namespace sigverify
