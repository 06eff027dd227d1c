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

#include "sigverify/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sigverify/error.hpp"
#include "sigverify/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace sigverify {

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::Config, msg); }

}  // namespace

void check_config(const PipelineConfig& cfg) {
  if (cfg.resample_length < 8) config_error("resample_length must be >= 8");
  if (cfg.levels < 1) config_error("levels must be >= 1");
  if (cfg.smooth_window != 0 &&
      (cfg.smooth_window % 2 == 0 || cfg.smooth_window > cfg.resample_length)) {
    config_error("smooth_window must be 0 or an odd number <= resample_length");
  }
  WaveletFilterBank fb;
  try {
    fb = make_wavelet(cfg.wavelet);
  } catch (const Error& e) {
    config_error(std::string("wavelet: ") + e.what());
  }
  std::size_t len = cfg.resample_length;
  for (int i = 0; i < cfg.levels; ++i) {
    if (len < fb.length()) {
      config_error("levels=" + std::to_string(cfg.levels) + " is too deep for " +
                   std::to_string(cfg.resample_length) + "-sample channels and " + fb.name);
    }
    len = dwt_output_length(len, fb.length());
  }
  const std::size_t transform_dim = kChannelCount * len;
  if (cfg.transform_k < 1 || cfg.transform_k > transform_dim) {
    config_error("pca.transform_k must lie in [1, " + std::to_string(transform_dim) + "]");
  }
  if (cfg.stats_k < 1 || cfg.stats_k > kStatFeatureLength) {
    config_error("pca.stats_k must lie in [1, " + std::to_string(kStatFeatureLength) + "]");
  }
  try {
    check_params(cfg.svm);
  } catch (const Error& e) {
    config_error(e.what());
  }
  if (cfg.train_genuine < 1) config_error("split.train_genuine must be >= 1");
  if (cfg.svc_genuine_per_user < 1) config_error("svc2004.genuine_per_user must be >= 1");
}

namespace {

json config_json(const PipelineConfig& cfg) {
  json svm = {{"kernel", std::string(to_string(cfg.svm.kernel))},
              {"C", cfg.svm.C},
              {"gamma", cfg.svm.gamma ? json(*cfg.svm.gamma) : json(nullptr)},
              {"tol", cfg.svm.tol},
              {"max_passes", cfg.svm.max_passes},
              {"seed", cfg.svm.seed}};
  return json{{"mode", std::string(to_string(cfg.mode))},
              {"resample_length", cfg.resample_length},
              {"wavelet", cfg.wavelet},
              {"levels", cfg.levels},
              {"smooth_window", cfg.smooth_window},
              {"normalize", cfg.normalize},
              {"pca", {{"transform_k", cfg.transform_k}, {"stats_k", cfg.stats_k}}},
              {"svm", svm},
              {"split",
               {{"train_genuine", cfg.train_genuine},
                {"train_forgery", cfg.train_forgery},
                {"seed", cfg.split_seed}}},
              {"svc2004", {{"genuine_per_user", cfg.svc_genuine_per_user}}}};
}

// Reads a JSON object field by field; every key must be claimed.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) config_error(path_ + " must be an object");
  }

  /// Throws on the first key no accessor asked for.
  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!claimed_.contains(key)) config_error("unknown key '" + qualify(key) + "'");
    }
  }

  const json* get(const std::string& key) {
    claimed_.emplace(key, true);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  template <typename T>
  void unsigned_int(const std::string& key, T& out) {
    if (const json* v = get(key)) {
      if (!v->is_number_unsigned()) config_error(qualify(key) + " must be a non-negative integer");
      out = v->get<T>();
    }
  }

  void signed_int(const std::string& key, int& out) {
    if (const json* v = get(key)) {
      if (!v->is_number_integer()) config_error(qualify(key) + " must be an integer");
      out = v->get<int>();
    }
  }

  void number(const std::string& key, double& out) {
    if (const json* v = get(key)) {
      if (!v->is_number()) config_error(qualify(key) + " must be a number");
      out = v->get<double>();
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const json* v = get(key)) {
      if (!v->is_boolean()) config_error(qualify(key) + " must be true or false");
      out = v->get<bool>();
    }
  }

  std::optional<std::string> string(const std::string& key) {
    if (const json* v = get(key)) {
      if (!v->is_string()) config_error(qualify(key) + " must be a string");
      return v->get<std::string>();
    }
    return std::nullopt;
  }

  std::string qualify(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json& obj_;
  std::string path_;
  std::map<std::string, bool> claimed_;
};

PipelineConfig config_from_json(const json& doc) {
  PipelineConfig cfg;
  {
    ObjectReader r(doc, "");
    if (auto s = r.string("mode")) {
      try {
        cfg.mode = parse_preprocess_mode(*s);
      } catch (const Error& e) {
        config_error(std::string("mode: ") + e.what());
      }
    }
    r.unsigned_int("resample_length", cfg.resample_length);
    if (auto s = r.string("wavelet")) cfg.wavelet = *s;
    r.signed_int("levels", cfg.levels);
    r.unsigned_int("smooth_window", cfg.smooth_window);
    r.boolean("normalize", cfg.normalize);
    if (const json* pca = r.get("pca")) {
      ObjectReader p(*pca, "pca");
      p.unsigned_int("transform_k", cfg.transform_k);
      p.unsigned_int("stats_k", cfg.stats_k);
      p.finish();
    }
    if (const json* svm = r.get("svm")) {
      ObjectReader s(*svm, "svm");
      if (auto k = s.string("kernel")) {
        try {
          cfg.svm.kernel = parse_kernel(*k);
        } catch (const Error& e) {
          config_error(std::string("svm.kernel: ") + e.what());
        }
      }
      s.number("C", cfg.svm.C);
      if (const json* g = s.get("gamma")) {
        if (g->is_null()) {
          cfg.svm.gamma.reset();
        } else if (g->is_number()) {
          cfg.svm.gamma = g->get<double>();
        } else {
          config_error("svm.gamma must be a number or null");
        }
      }
      s.number("tol", cfg.svm.tol);
      s.signed_int("max_passes", cfg.svm.max_passes);
      s.unsigned_int("seed", cfg.svm.seed);
      s.finish();
    }
    if (const json* split = r.get("split")) {
      ObjectReader s(*split, "split");
      s.unsigned_int("train_genuine", cfg.train_genuine);
      s.unsigned_int("train_forgery", cfg.train_forgery);
      s.unsigned_int("seed", cfg.split_seed);
      s.finish();
    }
    if (const json* svc = r.get("svc2004")) {
      ObjectReader s(*svc, "svc2004");
      s.signed_int("genuine_per_user", cfg.svc_genuine_per_user);
      s.finish();
    }
    r.finish();
  }
  check_config(cfg);
  return cfg;
}

std::string read_file(const fs::path& path, ErrorCode missing) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(missing, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    config_error(what + " is not valid JSON: " + e.what());
  }
}

}  // namespace

PipelineConfig parse_config(std::string_view json_text) {
  return config_from_json(parse_json(json_text, "config"));
}

PipelineConfig load_config(const fs::path& path) {
  // A missing config is a configuration problem, not a data-I/O one.
  return parse_config(read_file(path, ErrorCode::Config));
}

std::string config_to_json(const PipelineConfig& cfg) { return config_json(cfg).dump(2); }

FeatureExtractor::FeatureExtractor(const PipelineConfig& cfg)
    : mode_(cfg.mode),
      opts_{cfg.resample_length, cfg.smooth_window, cfg.normalize},
      fb_(make_wavelet(cfg.wavelet)),
      levels_(cfg.levels) {}

TransformFeatureVector FeatureExtractor::transform_features(const RawSignature& sig) const {
  return assemble_transform_features(derive_channels(sig, opts_), mode_, fb_, levels_);
}

StatFeatureVector FeatureExtractor::stat_features(const RawSignature& sig) const {
  return assemble_stat_features(derive_raw_channels(sig, opts_));
}

double score(const SignerModel& model, const FeatureExtractor& fx, const RawSignature& sig) {
  const auto tf = fx.transform_features(sig);
  const auto sf = fx.stat_features(sig);
  return svm_decision(model.svm, model.reducer.reduce(tf.values, sf.values));
}

const SignerModel& PersistedModel::find(std::string_view signer_id) const {
  auto it = std::lower_bound(signers.begin(), signers.end(), signer_id,
                             [](const SignerModel& m, std::string_view id) { return m.signer_id < id; });
  if (it == signers.end() || it->signer_id != signer_id) {
    throw Error(ErrorCode::UnknownSigner, "model has no signer '" + std::string(signer_id) + "'");
  }
  return *it;
}

namespace {

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  }
  return rows;
}

json pca_json(const PcaModel& p) {
  return {{"mean", p.mean},
          {"loadings", matrix_json(p.loadings)},
          {"eigenvalues", p.eigenvalues},
          {"total_variance", p.total_variance}};
}

json signer_json(const SignerModel& s) {
  const auto& d = s.diagnostics;
  return {{"signer_id", s.signer_id},
          {"threshold", s.threshold},
          {"reducer",
           {{"transform_pca", pca_json(s.reducer.transform_pca)},
            {"stats_pca", pca_json(s.reducer.stats_pca)},
            {"scale_mean", s.reducer.scale_mean},
            {"scale_sd", s.reducer.scale_sd}}},
          {"svm",
           {{"kernel", std::string(to_string(s.svm.params.kernel))},
            {"C", s.svm.params.C},
            {"gamma", s.svm.params.gamma.value_or(0.0)},
            {"tol", s.svm.params.tol},
            {"max_passes", s.svm.params.max_passes},
            {"seed", s.svm.params.seed},
            {"bias", s.svm.bias},
            {"alphas_times_labels", s.svm.alphas_times_labels},
            {"support_vectors", s.svm.support_vectors}}},
          {"training",
           {{"positives", s.n_train_positive},
            {"negatives", s.n_train_negative},
            {"sweeps", d.sweeps},
            {"pair_updates", d.pair_updates},
            {"max_kkt_violation", d.max_kkt_violation},
            {"dual_residual", d.dual_residual},
            {"training_accuracy", d.training_accuracy},
            {"n_support", d.n_support},
            {"n_bounded", d.n_bounded}}}};
}

Matrix matrix_from(const json& rows) {
  return Matrix::from_rows(rows.get<std::vector<std::vector<double>>>());
}

PcaModel pca_from(const json& j) {
  PcaModel p;
  p.mean = j.at("mean").get<std::vector<double>>();
  p.loadings = matrix_from(j.at("loadings"));
  p.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
  p.total_variance = j.at("total_variance").get<double>();
  if (p.loadings.cols() != p.mean.size() || p.eigenvalues.size() != p.loadings.rows()) {
    config_error("PCA block has inconsistent dimensions");
  }
  return p;
}

SignerModel signer_from(const json& j) {
  SignerModel s;
  s.signer_id = j.at("signer_id").get<std::string>();
  s.threshold = j.at("threshold").get<double>();
  const json& r = j.at("reducer");
  s.reducer.transform_pca = pca_from(r.at("transform_pca"));
  s.reducer.stats_pca = pca_from(r.at("stats_pca"));
  s.reducer.scale_mean = r.at("scale_mean").get<std::vector<double>>();
  s.reducer.scale_sd = r.at("scale_sd").get<std::vector<double>>();
  const json& v = j.at("svm");
  s.svm.params.kernel = parse_kernel(v.at("kernel").get<std::string>());
  s.svm.params.C = v.at("C").get<double>();
  s.svm.params.gamma = v.at("gamma").get<double>();
  s.svm.params.tol = v.at("tol").get<double>();
  s.svm.params.max_passes = v.at("max_passes").get<int>();
  s.svm.params.seed = v.at("seed").get<std::uint64_t>();
  s.svm.bias = v.at("bias").get<double>();
  s.svm.alphas_times_labels = v.at("alphas_times_labels").get<std::vector<double>>();
  s.svm.support_vectors = v.at("support_vectors").get<std::vector<std::vector<double>>>();
  const json& t = j.at("training");
  s.n_train_positive = t.at("positives").get<std::size_t>();
  s.n_train_negative = t.at("negatives").get<std::size_t>();
  s.diagnostics.sweeps = t.at("sweeps").get<int>();
  s.diagnostics.pair_updates = t.at("pair_updates").get<long>();
  s.diagnostics.max_kkt_violation = t.at("max_kkt_violation").get<double>();
  s.diagnostics.dual_residual = t.at("dual_residual").get<double>();
  s.diagnostics.training_accuracy = t.at("training_accuracy").get<double>();
  s.diagnostics.n_support = t.at("n_support").get<std::size_t>();
  s.diagnostics.n_bounded = t.at("n_bounded").get<std::size_t>();

  const std::size_t dim = s.reducer.transform_pca.k() + s.reducer.stats_pca.k();
  if (s.reducer.scale_mean.size() != dim || s.reducer.scale_sd.size() != dim ||
      s.svm.alphas_times_labels.size() != s.svm.support_vectors.size() ||
      std::any_of(s.svm.support_vectors.begin(), s.svm.support_vectors.end(),
                  [&](const auto& sv) { return sv.size() != dim; })) {
    config_error("signer '" + s.signer_id + "' has inconsistent model dimensions");
  }
  return s;
}

}  // namespace

std::string model_to_json(const PersistedModel& model) {
  json signers = json::array();
  for (const auto& s : model.signers) signers.push_back(signer_json(s));
  json doc = {{"format_version", PersistedModel::kFormatVersion},
              {"config", config_json(model.config)},
              {"signers", std::move(signers)}};
  return doc.dump(1);
}

PersistedModel parse_model(std::string_view json_text) {
  const json doc = parse_json(json_text, "model");
  try {
    const int version = doc.at("format_version").get<int>();
    if (version != PersistedModel::kFormatVersion) {
      config_error("unsupported model format_version " + std::to_string(version));
    }
    PersistedModel m;
    m.config = config_from_json(doc.at("config"));
    for (const auto& s : doc.at("signers")) m.signers.push_back(signer_from(s));
    std::sort(m.signers.begin(), m.signers.end(),
              [](const SignerModel& a, const SignerModel& b) { return a.signer_id < b.signer_id; });
    return m;
  } catch (const json::exception& e) {
    config_error(std::string("malformed model file: ") + e.what());
  }
}

void save_model(const PersistedModel& model, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << model_to_json(model) << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

PersistedModel load_model(const fs::path& path) {
  return parse_model(read_file(path, ErrorCode::Io));
}

std::vector<SignerProtocol> build_protocol(const DatasetDescriptor& ds, const PipelineConfig& cfg,
                                           std::vector<TrainTestSplit>& splits) {
  if (ds.signers.empty()) throw Error(ErrorCode::EmptyDataset, "dataset has no signers");
  splits.clear();
  splits.reserve(ds.signers.size());
  for (const auto& rec : ds.signers) {
    const std::size_t ntf = rec.forgeries.empty() ? 0 : cfg.train_forgery;
    splits.push_back(split(rec, cfg.train_genuine, ntf, cfg.split_seed));
  }

  auto pointers = [](const std::vector<RawSignature>& v) {
    std::vector<const RawSignature*> out;
    for (const auto& s : v) out.push_back(&s);
    return out;
  };
  std::vector<SignerProtocol> protocol(splits.size());
  for (std::size_t i = 0; i < splits.size(); ++i) {
    auto& p = protocol[i];
    p.signer_id = splits[i].train.signer_id;
    p.train_positive = pointers(splits[i].train.genuine);
    p.test_genuine = pointers(splits[i].test.genuine);
    if (!ds.signers[i].forgeries.empty()) {
      p.train_negative = pointers(splits[i].train.forgeries);
      p.test_forgery = pointers(splits[i].test.forgeries);
      continue;
    }
    for (std::size_t j = 0; j < splits.size(); ++j) {
      if (j == i) continue;
      for (const auto& s : splits[j].train.genuine) p.train_negative.push_back(&s);
      for (const auto& s : splits[j].test.genuine) p.test_forgery.push_back(&s);
    }
  }
  for (const auto& p : protocol) {
    if (p.train_negative.empty()) {
      throw Error(ErrorCode::NotEnoughSamples,
                  "signer " + p.signer_id + " has no forgeries and no other signer to contrast with");
    }
  }
  return protocol;
}

SignerModel train_signer(const SignerProtocol& protocol, const PipelineConfig& cfg,
                         const FeatureExtractor& fx) {
  const std::size_t m = protocol.train_positive.size() + protocol.train_negative.size();
  std::vector<std::vector<double>> transform_rows, stat_rows;
  std::vector<int> labels;
  transform_rows.reserve(m);
  stat_rows.reserve(m);
  labels.reserve(m);
  auto add = [&](const RawSignature* sig, int label) {
    transform_rows.push_back(fx.transform_features(*sig).values);
    stat_rows.push_back(fx.stat_features(*sig).values);
    labels.push_back(label);
  };
  for (const auto* s : protocol.train_positive) add(s, 1);
  for (const auto* s : protocol.train_negative) add(s, -1);

  SignerModel model;
  model.signer_id = protocol.signer_id;
  model.n_train_positive = protocol.train_positive.size();
  model.n_train_negative = protocol.train_negative.size();
  const Matrix T = Matrix::from_rows(transform_rows);
  const Matrix S = Matrix::from_rows(stat_rows);
  try {
    model.reducer = FeatureReducer::fit(T, S, cfg.transform_k, cfg.stats_k);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::KTooLarge) throw;
    throw Error(ErrorCode::Config,
                "signer " + protocol.signer_id + ": PCA needs 1 <= k <= training samples - 1 = " +
                    std::to_string(m - 1) + " (pca.transform_k=" + std::to_string(cfg.transform_k) +
                    ", pca.stats_k=" + std::to_string(cfg.stats_k) + ")");
  }

  Matrix X(m, model.reducer.output_dimension());
  for (std::size_t i = 0; i < m; ++i) {
    const auto z = model.reducer.reduce(transform_rows[i], stat_rows[i]);
    std::copy(z.begin(), z.end(), X.row(i).begin());
  }
  try {
    auto trained = svm_train(X, labels, cfg.svm);
    model.svm = std::move(trained.model);
    model.diagnostics = trained.diagnostics;
  } catch (const Error& e) {
    throw Error(e.code(), "signer " + protocol.signer_id + ": " + e.what());
  }

  ScoreSet train_scores;
  for (std::size_t i = 0; i < m; ++i) {
    const double f = svm_decision(model.svm, X.row(i));
    (labels[i] > 0 ? train_scores.genuine : train_scores.forgery).push_back(f);
  }
  model.threshold = compute_eer(train_scores).threshold;
  return model;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("SIGVERIFY_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

PersistedModel train_dataset(const DatasetDescriptor& ds, const PipelineConfig& cfg) {
  check_config(cfg);
  std::vector<TrainTestSplit> splits;
  const auto protocol = build_protocol(ds, cfg, splits);
  const FeatureExtractor fx(cfg);
  PersistedModel out;
  out.config = cfg;
  out.signers.resize(protocol.size());
  parallel_for(protocol.size(), worker_count(),
               [&](std::size_t i) { out.signers[i] = train_signer(protocol[i], cfg, fx); });
  std::sort(out.signers.begin(), out.signers.end(),
            [](const SignerModel& a, const SignerModel& b) { return a.signer_id < b.signer_id; });
  return out;
}

EvalReport evaluate_dataset(const DatasetDescriptor& ds, const PipelineConfig& cfg) {
  check_config(cfg);
  std::vector<TrainTestSplit> splits;
  const auto protocol = build_protocol(ds, cfg, splits);
  const FeatureExtractor fx(cfg);
  std::vector<SignerResult> results(protocol.size());
  parallel_for(protocol.size(), worker_count(), [&](std::size_t i) {
    const auto& p = protocol[i];
    const SignerModel model = train_signer(p, cfg, fx);
    ScoreSet s;
    for (const auto* sig : p.test_genuine) s.genuine.push_back(score(model, fx, *sig));
    for (const auto* sig : p.test_forgery) s.forgery.push_back(score(model, fx, *sig));
    results[i] = evaluate_signer(p.signer_id, s);
  });
  return aggregate(std::move(results), std::string(to_string(cfg.mode)), config_to_json(cfg));
}

}  // namespace sigverify
