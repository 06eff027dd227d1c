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
#include <iosfwd>
#include <string>
#include <vector>

#include "sigverify/text.hpp"

namespace sigverify {

/// Verification scores for one signer. A score >= threshold is accepted.
struct ScoreSet {
  std::vector<double> genuine;
  std::vector<double> forgery;
};

/// Throws InvalidArgument if either side is empty or holds a non-finite score.
void check_scores(const ScoreSet& s);

struct ErrorRates {
  double far = 0.0;  // percent of forgeries accepted
  double frr = 0.0;  // percent of genuine signatures rejected
};

ErrorRates far_frr_at(const ScoreSet& s, double threshold);

struct EerResult {
  double eer = 0.0;  // percent
  double threshold = 0.0;
};

/// Equal error rate from a sweep over every distinct score.
///
/// The operating points are the thresholds u_0 < ... < u_{K-1} (the distinct
/// scores) plus one just above the largest score. FAR - FRR is non-increasing
/// along them. If it hits zero at some point, that point's rate is the EER and
/// the threshold is the midpoint of the interval of thresholds sharing that
/// point's rates. Otherwise the EER is the linear interpolation of the
/// (FAR, FRR) segment between the two points where the sign flips, and the
/// threshold is interpolated with the same weight.
EerResult compute_eer(const ScoreSet& s);

struct RatePoint {
  double threshold = 0.0;  // +-infinity for the two sentinels
  double far = 0.0;
  double frr = 0.0;
};

/// One point per distinct score plus the -inf and +inf sentinels, ascending.
std::vector<RatePoint> roc_points(const ScoreSet& s);

struct SignerResult {
  std::string signer_id;
  double eer = 0.0;
  double eer_threshold = 0.0;
  double far_at_zero = 0.0;
  double frr_at_zero = 0.0;
  std::size_t n_genuine = 0;
  std::size_t n_forgery = 0;
  std::vector<RatePoint> roc;
};

SignerResult evaluate_signer(const std::string& signer_id, const ScoreSet& s);

struct EvalReport {
  std::string mode;
  std::vector<SignerResult> signers;  // sorted by signer_id
  double mean_eer = 0.0;
  double correct_rate = 0.0;  // 100 - mean_eer
  std::string config_snapshot;
};

/// Sorts rows by signer id and averages their EERs. Throws InvalidArgument on
/// an empty list.
EvalReport aggregate(std::vector<SignerResult> signers, std::string mode,
                     std::string config_snapshot = {});

/// Fixed two-decimal rendering with half-up rounding.
std::string format_percent(double pct);

void write_report_csv(std::ostream& os, const EvalReport& report);
void write_roc_csv(std::ostream& os, const EvalReport& report);

/// "Signer  EER (%)  FAR (%)  FRR (%)" table, FAR/FRR at the zero threshold.
std::string format_table(const EvalReport& report);

/// "mean_EER=<x>% correct_rate=<100-x>%"; both rendered from the same rounded
/// hundredths so the printed pair always sums to 100.00.
std::string format_aggregate_line(const EvalReport& report);

}  // namespace sigverify
