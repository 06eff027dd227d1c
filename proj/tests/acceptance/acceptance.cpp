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

// Acceptance run: one PASS/FAIL/SKIP line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/eer_oracle.hpp"
#include "oracles/pca_oracle.hpp"
#include "sigverify/classifier.hpp"
#include "sigverify/datasets.hpp"
#include "sigverify/evaluation.hpp"
#include "sigverify/features.hpp"
#include "sigverify/pipeline.hpp"
#include "sigverify/rng.hpp"
#include "sigverify/signal.hpp"
#include "sigverify/transforms.hpp"

using namespace sigverify;

namespace {

enum class Verdict { pass, fail, skip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

// Every report produced by the run, for the identity check.
std::vector<EvalReport> g_reports;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<double> random_vector(SplitMix64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Outcome ac1_filter_bank() {
  const auto fb = make_db4();
  const std::size_t L = fb.length();
  double worst = 0.0;
  bool exact = L == 8;
  double slo = 0.0, shi = 0.0;
  for (std::size_t k = 0; k < L; ++k) {
    slo += fb.lo_d[k];
    shi += fb.hi_d[k];
    worst = std::max(worst, std::abs(fb.hi_d[k] - ((k % 2 == 0) ? 1.0 : -1.0) * fb.lo_d[L - 1 - k]));
    exact = exact && fb.lo_r[k] == fb.lo_d[L - 1 - k] && fb.hi_r[k] == fb.hi_d[L - 1 - k];
  }
  worst = std::max({worst, std::abs(slo - std::sqrt(2.0)), std::abs(shi)});
  for (std::size_t m = 0; 2 * m < L; ++m) {
    double lo = 0.0, hi = 0.0, cross = 0.0;
    for (std::size_t k = 0; k + 2 * m < L; ++k) {
      lo += fb.lo_d[k] * fb.lo_d[k + 2 * m];
      hi += fb.hi_d[k] * fb.hi_d[k + 2 * m];
      cross += fb.lo_d[k] * fb.hi_d[k + 2 * m];
    }
    const double target = m == 0 ? 1.0 : 0.0;
    worst = std::max({worst, std::abs(lo - target), std::abs(hi - target), std::abs(cross)});
  }
  const bool ok = exact && worst < 1e-10;
  return {ok ? Verdict::pass : Verdict::fail, "max invariant residual " + fmt(worst)};
}

Outcome ac2_reconstruction() {
  const auto fb = make_db4();
  SplitMix64 rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 16 + rng.below(512 - 16 + 1);
    const auto x = random_vector(rng, n);
    const auto c = dwt_single(x, fb);
    worst = std::max(worst, max_abs_diff(idwt_single(c.approx, c.detail, fb, n), x));
  }
  return {worst < 1e-9 ? Verdict::pass : Verdict::fail, "max round-trip error " + fmt(worst)};
}

Outcome ac3_dimensions() {
  const auto fb = make_db4();
  SplitMix64 rng(3);
  bool ok = true;
  std::string detail;
  for (auto mode : {PreprocessMode::dwt, PreprocessMode::dct, PreprocessMode::dwt_dct}) {
    const auto channel = random_vector(rng, 100);
    const std::size_t coeffs = preprocess_channel(channel, mode, fb).size();
    PipelineConfig cfg;
    cfg.mode = mode;
    const FeatureExtractor fx(cfg);

    Matrix t_rows(20, 477), s_rows(20, 54);
    std::size_t t_dim = 0, s_dim = 0;
    for (std::size_t r = 0; r < 20; ++r) {
      RawSignature sig;
      sig.signer_id = "a";
      for (std::size_t i = 0; i < 150; ++i) {
        SamplePoint p;
        p.x = rng.uniform(0, 1000);
        p.y = rng.uniform(0, 1000);
        p.pressure = rng.uniform(1, 500);
        p.azimuth = rng.uniform(0, 360);
        p.altitude = rng.uniform(20, 90);
        p.t = 10.0 * static_cast<double>(i);
        sig.points.push_back(p);
      }
      const auto tf = fx.transform_features(sig).values;
      const auto sf = fx.stat_features(sig).values;
      t_dim = tf.size();
      s_dim = sf.size();
      if (t_dim != 477 || s_dim != 54) break;
      std::copy(tf.begin(), tf.end(), t_rows.row(r).begin());
      std::copy(sf.begin(), sf.end(), s_rows.row(r).begin());
    }
    std::size_t reduced = 0;
    if (t_dim == 477 && s_dim == 54) {
      const auto reducer = FeatureReducer::fit(t_rows, s_rows);
      reduced = reducer.reduce(t_rows.row(0), s_rows.row(0)).size();
    }
    ok = ok && coeffs == 53 && t_dim == 477 && reduced == 10;
    detail += std::string(to_string(mode)) + " " + std::to_string(coeffs) + "/" +
              std::to_string(t_dim) + "/" + std::to_string(reduced) + " ";
  }
  detail.pop_back();
  return {ok ? Verdict::pass : Verdict::fail, detail};
}

Outcome ac4_dct() {
  SplitMix64 rng(4);
  double round_trip = 0.0, parseval = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto x = random_vector(rng, 1 + rng.below(256));
    const auto c = dct(x);
    round_trip = std::max(round_trip, max_abs_diff(idct(c), x));
    double ex = 0.0, ec = 0.0;
    for (double v : x) ex += v * v;
    for (double v : c.values) ec += v * v;
    parseval = std::max(parseval, std::abs(ex - ec));
  }
  const bool ok = round_trip < 1e-10 && parseval < 1e-10;
  return {ok ? Verdict::pass : Verdict::fail,
          "round trip " + fmt(round_trip) + ", Parseval " + fmt(parseval)};
}

double reconstruction_error(const PcaModel& model, const Matrix& X) {
  double acc = 0.0;
  for (std::size_t r = 0; r < X.rows(); ++r) {
    const auto back = pca_reconstruct(model, pca_project(model, X.row(r)));
    for (std::size_t c = 0; c < X.cols(); ++c) acc += (back[c] - X(r, c)) * (back[c] - X(r, c));
  }
  return acc / static_cast<double>(X.rows());
}

Outcome ac5_pca() {
  SplitMix64 rng(5);
  double eig_err = 0.0, angle = 0.0;
  int subspaces = 0, skipped = 0;
  bool monotone = true;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 2 + rng.below(19);
    const std::size_t d = 1 + rng.below(12);
    Matrix X(m, d);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < d; ++c) X(r, c) = rng.normal() * (1.0 + static_cast<double>(c));
    const auto ref = oracle::dense_pca(X);
    const std::size_t kmax = std::min(m - 1, d);
    const auto full = pca_fit(X, kmax);
    for (std::size_t i = 0; i < kmax; ++i) {
      eig_err = std::max(eig_err, std::abs(full.eigenvalues[i] - ref.eigenvalues[i]));
    }
    double previous = INFINITY;
    for (std::size_t k = 1; k <= kmax; ++k) {
      const auto model = pca_fit(X, k);
      const double next = k < ref.eigenvalues.size() ? ref.eigenvalues[k] : 0.0;
      // A retained subspace is only defined when the spectrum has a gap at k.
      if (ref.eigenvalues[k - 1] - next > 1e-6 * std::max(1.0, ref.eigenvalues[0])) {
        angle = std::max(angle, oracle::max_principal_sine(model.loadings, ref.directions, k));
        ++subspaces;
      } else {
        ++skipped;
      }
      const double err = reconstruction_error(model, X);
      monotone = monotone && err <= previous + 1e-12 * std::max(1.0, previous);
      previous = err;
    }
  }
  const bool ok = eig_err <= 1e-8 && angle <= 1e-6 && monotone;
  return {ok ? Verdict::pass : Verdict::fail,
          "eigenvalue error " + fmt(eig_err) + ", principal sine " + fmt(angle) + " over " +
              std::to_string(subspaces) + " subspaces (" + std::to_string(skipped) +
              " degenerate skipped), reconstruction " + (monotone ? "monotone" : "NOT monotone")};
}

// Largest KKT residual and |sum alpha y| of a trained model on its training set.
std::pair<double, double> optimality(const TrainedSvm& t, const Matrix& X, const std::vector<int>& y) {
  double kkt = 0.0, dual = 0.0;
  for (std::size_t i = 0; i < X.rows(); ++i) {
    double alpha = 0.0;
    for (std::size_t s = 0; s < t.model.support_vectors.size(); ++s) {
      if (std::equal(X.row(i).begin(), X.row(i).end(), t.model.support_vectors[s].begin())) {
        alpha = std::abs(t.model.alphas_times_labels[s]);
      }
    }
    dual += alpha * y[i];
    kkt = std::max(kkt, kkt_violation(alpha, y[i], svm_decision(t.model, X.row(i)), t.model.params.C));
  }
  return {kkt, std::abs(dual)};
}

Outcome ac6_svm() {
  SvmParams lin;
  lin.kernel = KernelType::linear;
  lin.C = 10;
  const Matrix two = Matrix::from_rows({{1, 0}, {-1, 0}});
  const std::vector<int> y2 = {1, -1};
  const auto t2 = svm_train(two, y2, lin);
  const double midpoint = std::abs(svm_decision(t2.model, std::vector<double>{0, 0}));

  SvmParams rbf;
  rbf.gamma = 1.0;
  rbf.C = 10;
  const Matrix xor_x = Matrix::from_rows({{0, 0}, {1, 1}, {0, 1}, {1, 0}});
  const std::vector<int> xor_y = {1, 1, -1, -1};
  const auto tx = svm_train(xor_x, xor_y, rbf);

  double worst_kkt_ratio = 0.0, worst_dual = 0.0;
  auto track = [&](const TrainedSvm& t, const Matrix& X, const std::vector<int>& y) {
    const auto [kkt, dual] = optimality(t, X, y);
    worst_kkt_ratio = std::max(worst_kkt_ratio, kkt / t.model.params.tol);
    worst_dual = std::max(worst_dual, dual);
  };
  track(t2, two, y2);
  track(tx, xor_x, xor_y);
  SplitMix64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t per = 5 + rng.below(20), dim = 2 + rng.below(9);
    Matrix X(2 * per, dim);
    std::vector<int> y;
    for (std::size_t i = 0; i < 2 * per; ++i) {
      y.push_back(i < per ? 1 : -1);
      for (std::size_t j = 0; j < dim; ++j) X(i, j) = 0.5 * y.back() + rng.normal();
    }
    track(svm_train(X, y, SvmParams{}), X, y);
  }
  const bool ok = midpoint < 1e-3 && tx.diagnostics.training_accuracy == 1.0 &&
                  worst_kkt_ratio <= 1.0 && worst_dual < 1e-6;
  return {ok ? Verdict::pass : Verdict::fail,
          "midpoint |score| " + fmt(midpoint) + ", XOR accuracy " +
              fmt(100.0 * tx.diagnostics.training_accuracy) + "%, max KKT/tol " +
              fmt(worst_kkt_ratio) + ", max |sum alpha y| " + fmt(worst_dual)};
}

Outcome ac7_eer() {
  SplitMix64 rng(7);
  double worst = 0.0, invariance = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    ScoreSet s;
    const std::size_t total = 2 + rng.below(199);
    const std::size_t ng = 1 + rng.below(total - 1);
    const bool ties = trial % 3 == 0;
    auto draw = [&](double shift) {
      return ties ? std::floor(rng.uniform(0, 6 + shift)) : rng.normal() + shift;
    };
    for (std::size_t i = 0; i < ng; ++i) s.genuine.push_back(draw(1.0));
    for (std::size_t i = ng; i < total; ++i) s.forgery.push_back(draw(0.0));
    const double eer = compute_eer(s).eer;
    worst = std::max(worst, std::abs(eer - oracle::brute_force_eer(s.genuine, s.forgery)));
    ScoreSet mapped;
    for (double g : s.genuine) mapped.genuine.push_back(std::exp(g / 3.0) + 2.0 * g);
    for (double f : s.forgery) mapped.forgery.push_back(std::exp(f / 3.0) + 2.0 * f);
    invariance = std::max(invariance, std::abs(compute_eer(mapped).eer - eer));
  }
  const bool ok = worst <= 1e-9 && invariance <= 1e-9;
  return {ok ? Verdict::pass : Verdict::fail,
          "max |EER - oracle| " + fmt(worst) + ", monotone-map drift " + fmt(invariance)};
}

std::string rendered(const EvalReport& r) {
  std::ostringstream os;
  write_report_csv(os, r);
  write_roc_csv(os, r);
  os << format_table(r) << format_aggregate_line(r);
  return os.str();
}

EvalReport synthetic_run(double delta) {
  SynthParams p;
  p.distortion = delta;
  auto report = evaluate_dataset(generate_synthetic(p), PipelineConfig{});
  g_reports.push_back(report);
  return report;
}

Outcome ac8_synthetic() {
  const auto start = std::chrono::steady_clock::now();
  const auto base = synthetic_run(0.3);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto rerun = synthetic_run(0.3);
  const auto easy = synthetic_run(0.05);
  const auto hard = synthetic_run(0.5);
  const bool identical = rendered(base) == rendered(rerun);
  const bool ok = base.mean_eer <= 20.0 && easy.mean_eer > hard.mean_eer && identical &&
                  seconds < 120.0;
  return {ok ? Verdict::pass : Verdict::fail,
          "mean EER " + format_percent(base.mean_eer) + "% at 0.3 (<= 20), " +
              format_percent(easy.mean_eer) + "% at 0.05 vs " + format_percent(hard.mean_eer) +
              "% at 0.5, reruns " + (identical ? "identical" : "DIFFER") + ", " + fmt(seconds) +
              " s per run"};
}

// Published skilled-forgery EER on the same corpus, used to report the gap.
constexpr double kReferenceEer = 8.70;

Outcome ac9_svc2004() {
  const char* dir = std::getenv("SIGVERIFY_SVC2004_DIR");
  if (dir == nullptr || *dir == '\0') return {Verdict::skip, "SIGVERIFY_SVC2004_DIR not set"};
  const PipelineConfig cfg;
  const auto report =
      evaluate_dataset(load_dataset(dir, DatasetFormat::svc2004, cfg.svc_genuine_per_user), cfg);
  g_reports.push_back(report);
  const bool ok = report.mean_eer >= 4.0 && report.mean_eer <= 20.0;
  return {ok ? Verdict::pass : Verdict::fail,
          "mean EER " + format_percent(report.mean_eer) + "% over " +
              std::to_string(report.signers.size()) + " signers, band [4, 20], gap to reference " +
              format_percent(report.mean_eer - kReferenceEer) + " points"};
}

Outcome ac10_identity() {
  SplitMix64 rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SignerResult> rows(1 + rng.below(30));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rows[i].signer_id = "r" + std::to_string(i);
      rows[i].eer = rng.uniform(0, 100);
    }
    g_reports.push_back(aggregate(std::move(rows), "dwt-dct"));
  }
  std::size_t bad = 0;
  for (const auto& r : g_reports) bad += r.correct_rate == 100.0 - r.mean_eer ? 0 : 1;
  return {bad == 0 ? Verdict::pass : Verdict::fail,
          std::to_string(g_reports.size() - bad) + "/" + std::to_string(g_reports.size()) +
              " reports satisfy correct_rate == 100 - mean_eer"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    double budget_seconds;  // <= 0 for no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", "db4 filter-bank invariants", 1.0, ac1_filter_bank},
      {"AC2", "perfect reconstruction", 10.0, ac2_reconstruction},
      {"AC3", "feature dimensioning", 0.0, ac3_dimensions},
      {"AC4", "DCT orthonormality", 0.0, ac4_dct},
      {"AC5", "PCA oracle equivalence", 0.0, ac5_pca},
      {"AC6", "SVM correctness", 0.0, ac6_svm},
      {"AC7", "EER oracle equivalence", 0.0, ac7_eer},
      {"AC8", "synthetic benchmark", 0.0, ac8_synthetic},
      {"AC9", "SVC2004 band check", 0.0, ac9_svc2004},
      {"AC10", "report identity", 0.0, ac10_identity},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {Verdict::fail, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0.0 && seconds >= c.budget_seconds && o.verdict == Verdict::pass) {
      o.verdict = Verdict::fail;
      o.detail += ", over the " + fmt(c.budget_seconds) + " s budget";
    }
    const char* tag = o.verdict == Verdict::pass ? "PASS" : o.verdict == Verdict::fail ? "FAIL" : "SKIP";
    failures += o.verdict == Verdict::fail ? 1 : 0;
    std::printf("%-4s %s  %s: %s (%.2f s)\n", c.id, tag, c.name, o.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
