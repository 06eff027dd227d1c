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

#include "sigverify/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "sigverify/error.hpp"

namespace sigverify {

void check_scores(const ScoreSet& s) {
  if (s.genuine.empty() || s.forgery.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "score set needs at least one genuine and one forgery score");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(s.genuine.begin(), s.genuine.end(), finite) ||
      !std::all_of(s.forgery.begin(), s.forgery.end(), finite)) {
    throw Error(ErrorCode::InvalidArgument, "score set contains a non-finite score");
  }
}

namespace {

double percent(std::size_t count, std::size_t total) {
  return 100.0 * static_cast<double>(count) / static_cast<double>(total);
}

struct SortedScores {
  std::vector<double> genuine;
  std::vector<double> forgery;
  std::vector<double> distinct;

  explicit SortedScores(const ScoreSet& s) : genuine(s.genuine), forgery(s.forgery) {
    check_scores(s);
    std::sort(genuine.begin(), genuine.end());
    std::sort(forgery.begin(), forgery.end());
    distinct = genuine;
    distinct.insert(distinct.end(), forgery.begin(), forgery.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  }

  ErrorRates at(double threshold) const {
    const auto n_accepted_forgery = static_cast<std::size_t>(
        forgery.end() - std::lower_bound(forgery.begin(), forgery.end(), threshold));
    const auto n_rejected_genuine = static_cast<std::size_t>(
        std::lower_bound(genuine.begin(), genuine.end(), threshold) - genuine.begin());
    return {percent(n_accepted_forgery, forgery.size()),
            percent(n_rejected_genuine, genuine.size())};
  }
};

}  // namespace

ErrorRates far_frr_at(const ScoreSet& s, double threshold) {
  return SortedScores(s).at(threshold);
}

EerResult compute_eer(const ScoreSet& s) {
  const SortedScores sorted(s);
  const auto& u = sorted.distinct;
  const std::size_t K = u.size();

  // Operating point j uses threshold u[j]; point K sits just above the
  // largest score and rejects everything.
  auto threshold_of = [&](std::size_t j) {
    return j < K ? u[j] : std::nextafter(u[K - 1], std::numeric_limits<double>::infinity());
  };

  ErrorRates prev = sorted.at(u[0]);
  for (std::size_t j = 1; j <= K; ++j) {
    const ErrorRates cur = j < K ? sorted.at(u[j]) : ErrorRates{0.0, 100.0};
    const double d_prev = prev.far - prev.frr;
    const double d_cur = cur.far - cur.frr;
    if (d_cur == 0.0) {
      return {cur.far, 0.5 * (u[j - 1] + u[j])};
    }
    if (d_cur < 0.0) {
      const double t = d_prev / (d_prev - d_cur);
      const double th0 = threshold_of(j - 1);
      const double th1 = threshold_of(j);
      return {prev.far + t * (cur.far - prev.far), th0 + t * (th1 - th0)};
    }
    prev = cur;
  }
  // Unreachable: the last operating point always has FAR - FRR = -100.
  return {50.0, u.back()};
}

std::vector<RatePoint> roc_points(const ScoreSet& s) {
  const SortedScores sorted(s);
  std::vector<RatePoint> pts;
  pts.reserve(sorted.distinct.size() + 2);
  const double inf = std::numeric_limits<double>::infinity();
  pts.push_back({-inf, 100.0, 0.0});
  for (double th : sorted.distinct) {
    const auto r = sorted.at(th);
    pts.push_back({th, r.far, r.frr});
  }
  pts.push_back({inf, 0.0, 100.0});
  return pts;
}

SignerResult evaluate_signer(const std::string& signer_id, const ScoreSet& s) {
  SignerResult r;
  r.signer_id = signer_id;
  const auto eer = compute_eer(s);
  r.eer = eer.eer;
  r.eer_threshold = eer.threshold;
  const auto zero = far_frr_at(s, 0.0);
  r.far_at_zero = zero.far;
  r.frr_at_zero = zero.frr;
  r.n_genuine = s.genuine.size();
  r.n_forgery = s.forgery.size();
  r.roc = roc_points(s);
  return r;
}

EvalReport aggregate(std::vector<SignerResult> signers, std::string mode,
                     std::string config_snapshot) {
  if (signers.empty()) {
    throw Error(ErrorCode::InvalidArgument, "cannot aggregate an empty signer list");
  }
  std::sort(signers.begin(), signers.end(),
            [](const SignerResult& a, const SignerResult& b) { return a.signer_id < b.signer_id; });
  EvalReport rep;
  rep.mode = std::move(mode);
  rep.config_snapshot = std::move(config_snapshot);
  double sum = 0.0;
  for (const auto& s : signers) sum += s.eer;
  rep.mean_eer = sum / static_cast<double>(signers.size());
  rep.correct_rate = 100.0 - rep.mean_eer;
  rep.signers = std::move(signers);
  return rep;
}

namespace {

long long hundredths(double pct) {
  return static_cast<long long>(std::floor(pct * 100.0 + 0.5));
}

std::string render_hundredths(long long h) {
  const bool neg = h < 0;
  const long long a = neg ? -h : h;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%lld.%02lld", neg ? "-" : "", a / 100, a % 100);
  return buf;
}

}  // namespace

std::string format_percent(double pct) { return render_hundredths(hundredths(pct)); }

void write_report_csv(std::ostream& os, const EvalReport& report) {
  os << "signer_id,mode,eer_pct,eer_threshold,far_at_zero_pct,frr_at_zero_pct,"
        "n_genuine,n_forgery\n";
  for (const auto& s : report.signers) {
    os << s.signer_id << ',' << report.mode << ',' << format_percent(s.eer) << ','
       << format_number(s.eer_threshold) << ',' << format_percent(s.far_at_zero) << ','
       << format_percent(s.frr_at_zero) << ',' << s.n_genuine << ',' << s.n_forgery
       << '\n';
  }
}

void write_roc_csv(std::ostream& os, const EvalReport& report) {
  os << "signer_id,threshold,far_pct,frr_pct\n";
  for (const auto& s : report.signers) {
    for (const auto& p : s.roc) {
      os << s.signer_id << ',' << format_number(p.threshold) << ','
         << format_percent(p.far) << ',' << format_percent(p.frr) << '\n';
    }
  }
}

std::string format_table(const EvalReport& report) {
  std::size_t width = 6;
  for (const auto& s : report.signers) width = std::max(width, s.signer_id.size());
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-*s  %8s  %8s  %8s\n", static_cast<int>(width),
                "Signer", "EER (%)", "FAR (%)", "FRR (%)");
  os << buf;
  for (const auto& s : report.signers) {
    std::snprintf(buf, sizeof buf, "%-*s  %8s  %8s  %8s\n", static_cast<int>(width),
                  s.signer_id.c_str(), format_percent(s.eer).c_str(),
                  format_percent(s.far_at_zero).c_str(),
                  format_percent(s.frr_at_zero).c_str());
    os << buf;
  }
  return os.str();
}

std::string format_aggregate_line(const EvalReport& report) {
  const long long mean = hundredths(report.mean_eer);
  return "mean_EER=" + render_hundredths(mean) +
         "% correct_rate=" + render_hundredths(10000 - mean) + "%";
}

}  // namespace sigverify
