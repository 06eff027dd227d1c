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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include "oracles/eer_oracle.hpp"
#include "sigverify/error.hpp"
#include "sigverify/evaluation.hpp"
#include "support.hpp"

using namespace sigverify;
using Catch::Matchers::WithinAbs;
using sigverify::testing::code_of;

namespace {

ScoreSet random_scores(SplitMix64& rng, std::size_t ng, std::size_t nf, double shift, bool coarse) {
  ScoreSet s;
  auto draw = [&](double mu) {
    const double v = mu + rng.normal();
    return coarse ? std::round(v * 4.0) / 4.0 : v;
  };
  for (std::size_t i = 0; i < ng; ++i) s.genuine.push_back(draw(shift));
  for (std::size_t i = 0; i < nf; ++i) s.forgery.push_back(draw(0.0));
  return s;
}

SignerResult row(const std::string& id, double eer) {
  SignerResult r;
  r.signer_id = id;
  r.eer = eer;
  return r;
}

}  // namespace

TEST_CASE("far_frr_at: extremes and a hand count", "[evaluation][rates]") {
  const ScoreSet s{{0.9, 0.8}, {0.1, 0.7}};
  const auto lo = far_frr_at(s, -1.0);
  REQUIRE(lo.far == 100.0);
  REQUIRE(lo.frr == 0.0);
  const auto hi = far_frr_at(s, 2.0);
  REQUIRE(hi.far == 0.0);
  REQUIRE(hi.frr == 100.0);
  const auto mid = far_frr_at(s, 0.75);
  REQUIRE(mid.far == 0.0);
  REQUIRE(mid.frr == 0.0);
  const auto at = far_frr_at(s, 0.7);
  REQUIRE(at.far == 50.0);
}

TEST_CASE("check_scores: empty or non-finite sets", "[evaluation][rates]") {
  REQUIRE(code_of([] { check_scores(ScoreSet{{}, {1.0}}); }) == ErrorCode::InvalidArgument);
  REQUIRE(code_of([] { check_scores(ScoreSet{{1.0}, {}}); }) == ErrorCode::InvalidArgument);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  REQUIRE(code_of([&] { check_scores(ScoreSet{{nan}, {1.0}}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("compute_eer: separated and indistinguishable sets", "[evaluation][eer]") {
  const auto sep = compute_eer(ScoreSet{{0.9, 0.8}, {0.1, 0.2}});
  REQUIRE(sep.eer == 0.0);
  REQUIRE(sep.threshold > 0.2);
  REQUIRE(sep.threshold <= 0.8);

  const std::vector<double> same = {0.3, 0.1, 0.7, 0.5, 0.9};
  REQUIRE_THAT(compute_eer(ScoreSet{same, same}).eer, WithinAbs(50.0, 1e-12));

  const auto reversed = compute_eer(ScoreSet{{0.1, 0.2}, {0.9, 0.8}});
  REQUIRE(reversed.eer == 100.0);
}

TEST_CASE("compute_eer: interpolated crossing", "[evaluation][eer]") {
  const ScoreSet s{{2, 4}, {1, 3}};
  // t=1: (100, 0); t=2: (50, 0); t=3: (50, 50) -> exact zero.
  const auto r = compute_eer(s);
  REQUIRE(r.eer == 50.0);
  REQUIRE(r.threshold == 2.5);

  const ScoreSet flip{{2, 3, 4}, {1, 2.5}};
  // t=2: FAR 50, FRR 0 ; t=2.5: FAR 50, FRR 33.3 ; t=3: FAR 0, FRR 33.3.
  const auto f = compute_eer(flip);
  const double dp = 50.0 - 100.0 / 3.0, dc = -100.0 / 3.0;
  const double w = dp / (dp - dc);
  REQUIRE_THAT(f.eer, WithinAbs(50.0 + w * (0.0 - 50.0), 1e-12));
  REQUIRE_THAT(f.threshold, WithinAbs(2.5 + w * 0.5, 1e-12));
}

TEST_CASE("compute_eer: matches the exhaustive oracle", "[evaluation][eer][oracle]") {
  SplitMix64 seven(7);
  const auto fixed = random_scores(seven, 50, 50, 1.0, false);
  REQUIRE_THAT(compute_eer(fixed).eer,
               WithinAbs(sigverify::oracle::brute_force_eer(fixed.genuine, fixed.forgery), 1e-9));

  SplitMix64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_scores(rng, 1 + rng.below(100), 1 + rng.below(100), rng.uniform(-1, 3), trial % 2 == 0);
    const auto r = compute_eer(s);
    REQUIRE_THAT(r.eer, WithinAbs(sigverify::oracle::brute_force_eer(s.genuine, s.forgery), 1e-9));
    REQUIRE(r.eer >= 0.0);
    REQUIRE(r.eer <= 100.0);
  }
}

TEST_CASE("compute_eer: invariant under strictly increasing maps", "[evaluation][eer][property]") {
  SplitMix64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_scores(rng, 5 + rng.below(60), 5 + rng.below(60), 1.0, trial % 2 == 1);
    ScoreSet t;
    for (double v : s.genuine) t.genuine.push_back(std::exp(v) * 3.0 + 1.0);
    for (double v : s.forgery) t.forgery.push_back(std::exp(v) * 3.0 + 1.0);
    REQUIRE_THAT(compute_eer(t).eer, WithinAbs(compute_eer(s).eer, 1e-9));
  }
}

TEST_CASE("roc_points: sentinels, count and monotonicity", "[evaluation][roc]") {
  SplitMix64 rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = random_scores(rng, 1 + rng.below(40), 1 + rng.below(40), 1.0, true);
    std::vector<double> all = s.genuine;
    all.insert(all.end(), s.forgery.begin(), s.forgery.end());
    std::sort(all.begin(), all.end());
    const auto distinct = static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
    const auto pts = roc_points(s);
    REQUIRE(pts.size() == distinct + 2);
    REQUIRE(pts.front().far == 100.0);
    REQUIRE(pts.front().frr == 0.0);
    REQUIRE(pts.back().far == 0.0);
    REQUIRE(pts.back().frr == 100.0);
    REQUIRE(std::isinf(pts.front().threshold));
    REQUIRE(std::isinf(pts.back().threshold));
    for (std::size_t i = 1; i < pts.size(); ++i) {
      REQUIRE(pts[i].threshold > pts[i - 1].threshold);
      REQUIRE(pts[i].far <= pts[i - 1].far);
      REQUIRE(pts[i].frr >= pts[i - 1].frr);
    }
  }
}

TEST_CASE("aggregate: table rows and the correct-rate identity", "[evaluation][report]") {
  const auto one = aggregate({row("A", 8.43)}, "dwt-dct");
  REQUIRE(one.mean_eer == 8.43);
  REQUIRE(one.correct_rate == 100.0 - 8.43);

  const auto two = aggregate({row("b", 8.70), row("a", 8.70)}, "dwt-dct");
  REQUIRE(two.signers.front().signer_id == "a");
  REQUIRE(format_percent(two.mean_eer) == "8.70");
  REQUIRE(format_aggregate_line(two) == "mean_EER=8.70% correct_rate=91.30%");

  const auto perfect = aggregate({row("z", 0.0)}, "dct");
  REQUIRE(perfect.correct_rate == 100.0);
  REQUIRE(code_of([] { aggregate({}, "dwt"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("aggregate: printed pair always sums to 100.00", "[evaluation][report][property]") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<SignerResult> rows;
    const std::size_t n = 1 + rng.below(12);
    for (std::size_t i = 0; i < n; ++i) rows.push_back(row("s" + std::to_string(i), rng.uniform(0, 60)));
    const auto rep = aggregate(rows, "dwt");
    REQUIRE(rep.correct_rate == 100.0 - rep.mean_eer);
    const auto line = format_aggregate_line(rep);
    const auto eq1 = line.find('=') + 1, pct1 = line.find('%');
    const auto eq2 = line.find('=', pct1) + 1, pct2 = line.find('%', eq2);
    const double a = std::stod(line.substr(eq1, pct1 - eq1));
    const double b = std::stod(line.substr(eq2, pct2 - eq2));
    REQUIRE(std::llround(a * 100) + std::llround(b * 100) == 10000);
  }
}

TEST_CASE("format_percent: half-up hundredths", "[evaluation][report]") {
  REQUIRE(format_percent(8.7) == "8.70");
  REQUIRE(format_percent(0.0) == "0.00");
  REQUIRE(format_percent(100.0) == "100.00");
  REQUIRE(format_percent(22.222222) == "22.22");
  REQUIRE(format_percent(55.555556) == "55.56");
  REQUIRE(format_percent(0.125) == "0.13");
  REQUIRE(format_percent(33.333333333) == "33.33");
}

TEST_CASE("report writers: headers and row layout", "[evaluation][report]") {
  const ScoreSet s{{0.9, 0.8, -0.2}, {0.1, -0.7, 0.85}};
  const auto rep = aggregate({evaluate_signer("B", s), evaluate_signer("A", s)}, "dwt-dct", "{}");
  std::ostringstream csv;
  write_report_csv(csv, rep);
  std::istringstream lines(csv.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  REQUIRE(header == "signer_id,mode,eer_pct,eer_threshold,far_at_zero_pct,frr_at_zero_pct,n_genuine,n_forgery");
  REQUIRE(first.rfind("A,dwt-dct,33.33,", 0) == 0);
  REQUIRE(first.substr(first.size() - 4) == ",3,3");

  std::ostringstream roc;
  write_roc_csv(roc, rep);
  REQUIRE(roc.str().rfind("signer_id,threshold,far_pct,frr_pct\nA,-inf,100.00,0.00\n", 0) == 0);

  const auto table = format_table(rep);
  REQUIRE(table.find("Signer") == 0);
  REQUIRE(table.find("EER (%)") != std::string::npos);
  REQUIRE(table.find("FRR (%)") != std::string::npos);
}

TEST_CASE("evaluate_signer: zero-threshold operating point", "[evaluation][report]") {
  const ScoreSet s{{0.9, -0.1, 0.4, 0.2}, {-0.5, 0.3, -0.9}};
  const auto r = evaluate_signer("x", s);
  REQUIRE(r.far_at_zero == 100.0 / 3.0);
  REQUIRE(r.frr_at_zero == 25.0);
  REQUIRE(r.n_genuine == 4);
  REQUIRE(r.n_forgery == 3);
  REQUIRE(r.roc.size() == 9);
}
