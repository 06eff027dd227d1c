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
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "sigverify/classifier.hpp"
#include "sigverify/datasets.hpp"
#include "sigverify/evaluation.hpp"
#include "sigverify/features.hpp"
#include "sigverify/signal.hpp"
#include "sigverify/transforms.hpp"

namespace sigverify {

/// Every tunable of the train/evaluate protocol. The defaults give 100-sample
/// channels, 53 coefficients per channel, 477 transform features reduced to 8
/// components, 54 statistics reduced to 2, and a 10-dimensional SVM input.
struct PipelineConfig {
  PreprocessMode mode = PreprocessMode::dwt_dct;
  std::size_t resample_length = 100;
  std::string wavelet = "db4";
  int levels = 1;
  std::size_t smooth_window = 0;
  bool normalize = true;
  std::size_t transform_k = kDefaultTransformComponents;
  std::size_t stats_k = kDefaultStatComponents;
  SvmParams svm;
  std::size_t train_genuine = 10;
  std::size_t train_forgery = 10;
  std::uint64_t split_seed = 7;
  int svc_genuine_per_user = 20;

  bool operator==(const PipelineConfig&) const = default;
};

/// Throws Config for any value outside its documented range.
void check_config(const PipelineConfig& cfg);

/// JSON text. Unknown keys, wrong types and out-of-range values throw Config;
/// absent keys keep their defaults.
PipelineConfig parse_config(std::string_view json_text);
PipelineConfig load_config(const std::filesystem::path& path);
/// Pretty-printed JSON with every key present.
std::string config_to_json(const PipelineConfig& cfg);

/// Signature -> (transform features, statistical features) under a config.
class FeatureExtractor {
 public:
  explicit FeatureExtractor(const PipelineConfig& cfg);

  TransformFeatureVector transform_features(const RawSignature& sig) const;
  StatFeatureVector stat_features(const RawSignature& sig) const;

 private:
  PreprocessMode mode_;
  ChannelOptions opts_;
  WaveletFilterBank fb_;
  int levels_;
};

/// Everything needed to score one signer's signatures.
struct SignerModel {
  std::string signer_id;
  FeatureReducer reducer;
  SvmModel svm;
  /// Decision threshold at the training split's EER point.
  double threshold = 0.0;
  SvmDiagnostics diagnostics;
  std::size_t n_train_positive = 0;
  std::size_t n_train_negative = 0;
};

double score(const SignerModel& model, const FeatureExtractor& fx, const RawSignature& sig);

struct PersistedModel {
  static constexpr int kFormatVersion = 1;
  PipelineConfig config;
  std::vector<SignerModel> signers;  // sorted by signer_id

  /// Throws UnknownSigner.
  const SignerModel& find(std::string_view signer_id) const;
};

std::string model_to_json(const PersistedModel& model);
/// Throws Config on a malformed document or an unsupported format_version.
PersistedModel parse_model(std::string_view json_text);
void save_model(const PersistedModel& model, const std::filesystem::path& path);
PersistedModel load_model(const std::filesystem::path& path);

/// Per-signer training and test sets. Negatives are the signer's forgeries or,
/// for a signer without any, other signers' genuine samples from the same side
/// of their own splits.
struct SignerProtocol {
  std::string signer_id;
  std::vector<const RawSignature*> train_positive;
  std::vector<const RawSignature*> train_negative;
  std::vector<const RawSignature*> test_genuine;
  std::vector<const RawSignature*> test_forgery;
};

/// Splits every signer; the returned pointers reference `splits`.
std::vector<SignerProtocol> build_protocol(const DatasetDescriptor& ds, const PipelineConfig& cfg,
                                           std::vector<TrainTestSplit>& splits);

SignerModel train_signer(const SignerProtocol& protocol, const PipelineConfig& cfg,
                         const FeatureExtractor& fx);

/// Workers used by the per-signer loops: SIGVERIFY_THREADS if set to a
/// positive integer, otherwise the hardware concurrency, at least 1.
std::size_t worker_count();

/// Runs fn(i) for i in [0, n) on up to `workers` threads. If any call throws,
/// the exception of the lowest failing index is rethrown after all finish.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn);

PersistedModel train_dataset(const DatasetDescriptor& ds, const PipelineConfig& cfg);

/// Trains on each signer's training split and scores the test split.
EvalReport evaluate_dataset(const DatasetDescriptor& ds, const PipelineConfig& cfg);

}  // namespace sigverify
