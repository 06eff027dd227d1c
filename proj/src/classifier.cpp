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

#include "sigverify/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sigverify/error.hpp"
#include "sigverify/rng.hpp"

namespace sigverify {

std::string_view to_string(KernelType k) {
  return k == KernelType::linear ? "linear" : "rbf";
}

KernelType parse_kernel(std::string_view text) {
  if (text == "linear") return KernelType::linear;
  if (text == "rbf") return KernelType::rbf;
  throw Error(ErrorCode::InvalidArgument,
              "unknown kernel '" + std::string(text) + "' (expected linear or rbf)");
}

void check_params(const SvmParams& p) {
  if (!(p.C > 0.0)) throw Error(ErrorCode::InvalidArgument, "svm C must be > 0");
  if (!(p.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "svm tol must be > 0");
  if (p.gamma && !(*p.gamma > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "svm gamma must be > 0");
  }
  if (p.max_passes < 1) {
    throw Error(ErrorCode::InvalidArgument, "svm max_passes must be >= 1");
  }
}

double kernel_eval(const SvmParams& params, std::span<const double> u,
                   std::span<const double> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "kernel arguments have lengths " + std::to_string(u.size()) +
                    " and " + std::to_string(v.size()));
  }
  if (params.kernel == KernelType::linear) return dot(u, v);
  double dist2 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    dist2 += d * d;
  }
  const double gamma = params.gamma.value_or(1.0 / static_cast<double>(u.size()));
  return std::exp(-gamma * dist2);
}

double kkt_violation(double alpha, int y, double f, double C) {
  const double margin = static_cast<double>(y) * f;
  if (alpha <= 0.0) return std::max(0.0, 1.0 - margin);
  if (alpha >= C) return std::max(0.0, margin - 1.0);
  return std::abs(margin - 1.0);
}

namespace {

// Dual state for SMO with the two-threshold optimality test. F[i] is the
// bias-free error sum_j alpha_j y_j K_ij - y_i; the problem is optimal within
// tol when max over I_low of F <= min over I_up of F + 2 tol.
class SmoSolver {
 public:
  SmoSolver(const Matrix& X, std::span<const int> y, const SvmParams& p)
      : y_(y), C_(p.C), tol_(p.tol), m_(X.rows()), K_(m_, m_),
        alpha_(m_, 0.0), F_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = i; j < m_; ++j) {
        K_(i, j) = K_(j, i) = kernel_eval(p, X.row(i), X.row(j));
      }
      F_[i] = -static_cast<double>(y_[i]);
    }
  }

  struct Extremes {
    double b_up;
    std::size_t i_up;
    double b_low;
    std::size_t i_low;
    double gap() const { return b_low - b_up; }
  };

  bool in_up(std::size_t i) const {
    return (y_[i] > 0 && alpha_[i] < C_) || (y_[i] < 0 && alpha_[i] > 0.0);
  }
  bool in_low(std::size_t i) const {
    return (y_[i] > 0 && alpha_[i] > 0.0) || (y_[i] < 0 && alpha_[i] < C_);
  }

  Extremes extremes() const {
    Extremes e{HUGE_VAL, 0, -HUGE_VAL, 0};
    for (std::size_t i = 0; i < m_; ++i) {
      if (in_up(i) && F_[i] < e.b_up) {
        e.b_up = F_[i];
        e.i_up = i;
      }
      if (in_low(i) && F_[i] > e.b_low) {
        e.b_low = F_[i];
        e.i_low = i;
      }
    }
    return e;
  }

  bool optimal(const Extremes& e) const { return e.gap() <= 2.0 * tol_; }

  bool take_step(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    const double a1 = alpha_[i1];
    const double a2 = alpha_[i2];
    const double y1 = y_[i1];
    const double y2 = y_[i2];
    const double s = y1 * y2;
    double lo, hi;
    if (s < 0) {
      lo = std::max(0.0, a2 - a1);
      hi = std::min(C_, C_ + a2 - a1);
    } else {
      lo = std::max(0.0, a1 + a2 - C_);
      hi = std::min(C_, a1 + a2);
    }
    if (hi - lo <= 0.0) return false;

    const double eta = K_(i1, i1) + K_(i2, i2) - 2.0 * K_(i1, i2);
    const double slope = y2 * (F_[i1] - F_[i2]);
    double a2n;
    if (eta > 1e-12) {
      a2n = std::clamp(a2 + slope / eta, lo, hi);
    } else {
      // Flat curvature: the dual is linear along the pair, go to an end.
      if (std::abs(slope) < 1e-12) return false;
      a2n = slope > 0 ? hi : lo;
    }
    if (std::abs(a2n - a2) < 1e-12 * (a2n + a2 + 1e-12)) return false;
    double a1n = a1 + s * (a2 - a2n);
    a1n = snap(a1n);
    a2n = snap(a2n);

    const double d1 = y1 * (a1n - a1);
    const double d2 = y2 * (a2n - a2);
    for (std::size_t k = 0; k < m_; ++k) F_[k] += d1 * K_(i1, k) + d2 * K_(i2, k);
    alpha_[i1] = a1n;
    alpha_[i2] = a2n;
    return true;
  }

  std::size_t size() const { return m_; }
  const std::vector<double>& alpha() const { return alpha_; }
  const std::vector<double>& errors() const { return F_; }
  double tol() const { return tol_; }

 private:
  double snap(double a) const {
    if (a < 1e-12 * C_) return 0.0;
    if (a > C_ * (1.0 - 1e-12)) return C_;
    return a;
  }

  std::span<const int> y_;
  double C_;
  double tol_;
  std::size_t m_;
  Matrix K_;
  std::vector<double> alpha_;
  std::vector<double> F_;
};

}  // namespace

TrainedSvm svm_train(const Matrix& X, std::span<const int> y, const SvmParams& params) {
  check_params(params);
  const std::size_t m = X.rows();
  if (m != y.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(m) + " samples but " + std::to_string(y.size()) + " labels");
  }
  if (m < 2) throw Error(ErrorCode::SingleClass, "need at least two training samples");
  bool has_pos = false, has_neg = false;
  for (int label : y) {
    if (label == 1) has_pos = true;
    else if (label == -1) has_neg = true;
    else throw Error(ErrorCode::InvalidArgument, "labels must be +1 or -1");
  }
  if (!has_pos || !has_neg) {
    throw Error(ErrorCode::SingleClass, "training labels contain a single class");
  }

  SvmParams resolved = params;
  resolved.gamma = params.gamma.value_or(1.0 / static_cast<double>(X.cols()));

  SmoSolver smo(X, y, resolved);
  SplitMix64 rng(resolved.seed);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);

  TrainedSvm out;
  auto& diag = out.diagnostics;
  const int budget = resolved.max_passes * 100;
  auto ext = smo.extremes();
  while (!smo.optimal(ext)) {
    if (diag.sweeps >= budget) {
      std::ostringstream msg;
      msg << "SMO stopped after " << diag.sweeps << " sweeps with KKT gap "
          << ext.gap() << " > 2*tol=" << 2.0 * resolved.tol;
      throw Error(ErrorCode::NoConvergence, msg.str());
    }
    ++diag.sweeps;
    rng.shuffle(std::span<std::size_t>(order));
    long changed = 0;
    for (std::size_t i : order) {
      ext = smo.extremes();
      if (smo.optimal(ext)) break;
      const double fi = smo.errors()[i];
      std::size_t partner;
      if (smo.in_low(i) && fi > ext.b_up + 2.0 * smo.tol()) {
        partner = ext.i_up;
      } else if (smo.in_up(i) && fi < ext.b_low - 2.0 * smo.tol()) {
        partner = ext.i_low;
      } else {
        continue;
      }
      if (smo.take_step(i, partner) || smo.take_step(i, rng.below(m))) ++changed;
    }
    ext = smo.extremes();
    if (changed == 0 && !smo.optimal(ext)) {
      if (!smo.take_step(ext.i_low, ext.i_up)) {
        std::ostringstream msg;
        msg << "SMO made no progress on the maximal violating pair; KKT gap "
            << ext.gap();
        throw Error(ErrorCode::NoConvergence, msg.str());
      }
      ++changed;
      ext = smo.extremes();
    }
    diag.pair_updates += changed;
  }

  const double b = 0.5 * (ext.b_up + ext.b_low);
  auto& model = out.model;
  model.params = resolved;
  model.bias = -b;
  const auto& alpha = smo.alpha();
  double dual = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (alpha[i] > 0.0) {
      model.support_vectors.emplace_back(X.row(i).begin(), X.row(i).end());
      model.alphas_times_labels.push_back(alpha[i] * y[i]);
      if (alpha[i] >= resolved.C) ++diag.n_bounded;
    }
    dual += alpha[i] * y[i];
  }
  diag.n_support = model.support_vectors.size();
  diag.dual_residual = std::abs(dual);

  std::size_t correct = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double f = svm_decision(model, X.row(i));
    diag.max_kkt_violation =
        std::max(diag.max_kkt_violation, kkt_violation(alpha[i], y[i], f, resolved.C));
    if ((f >= 0.0 ? 1 : -1) == y[i]) ++correct;
  }
  diag.training_accuracy = static_cast<double>(correct) / static_cast<double>(m);
  return out;
}

double svm_decision(const SvmModel& model, std::span<const double> x) {
  if (!model.support_vectors.empty() && x.size() != model.dimension()) {
    throw Error(ErrorCode::DimensionMismatch,
                "decision input has " + std::to_string(x.size()) +
                    " values, model expects " + std::to_string(model.dimension()));
  }
  double acc = model.bias;
  for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
    acc += model.alphas_times_labels[i] * kernel_eval(model.params, model.support_vectors[i], x);
  }
  return acc;
}

}  // namespace sigverify
