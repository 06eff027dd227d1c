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

#include "sigverify/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sigverify/datasets.hpp"
#include "sigverify/evaluation.hpp"
#include "sigverify/pipeline.hpp"
#include "sigverify/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace sigverify {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io:
      return kExitIo;
    case ErrorCode::Config:
    case ErrorCode::InvalidArgument:
    case ErrorCode::KTooLarge:
      return kExitConfig;
    case ErrorCode::NoConvergence:
      return kExitConvergence;
    default:
      return kExitData;
  }
}

namespace {

struct SynthArgs {
  SynthParams params;
  std::string out;
};

struct DataArgs {
  std::string data;
  std::string format = "csv";
  std::string config;
};

struct TrainArgs {
  DataArgs data;
  std::string model;
};

struct VerifyArgs {
  std::string model;
  std::string signature;
  std::string signer;
  std::string format;
  std::optional<double> threshold;
};

struct EvaluateArgs {
  DataArgs data;
  std::string report;
  std::string roc;
};

void add_data_options(CLI::App* cmd, DataArgs& a) {
  cmd->add_option("--data", a.data, "Dataset root directory")->required();
  cmd->add_option("--format", a.format, "svc2004, csv or synthetic")->capture_default_str();
  cmd->add_option("--config", a.config, "JSON pipeline configuration (defaults if omitted)");
}

PipelineConfig config_for(const DataArgs& a) {
  return a.config.empty() ? PipelineConfig{} : load_config(a.config);
}

DatasetDescriptor dataset_for(const DataArgs& a, const PipelineConfig& cfg, std::ostream& err) {
  DatasetFormat format;
  try {
    format = parse_dataset_format(a.format);
  } catch (const Error& e) {
    throw Error(ErrorCode::Config, e.what());
  }
  auto ds = load_dataset(a.data, format, cfg.svc_genuine_per_user);
  for (const auto& w : ds.warnings) err << "warning: " << w << '\n';
  return ds;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorCode::Io, "cannot write " + path.string());
  return os;
}

void finish_output(std::ofstream& os, const fs::path& path) {
  os.flush();
  if (!os) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  check_params(a.params);
  const auto ds = generate_synthetic(a.params);
  const json manifest = {{"generator", "sigverify-synthetic"},
                         {"seed", a.params.seed},
                         {"n_signers", a.params.n_signers},
                         {"n_genuine", a.params.n_genuine},
                         {"n_forgery", a.params.n_forgery},
                         {"n_points", a.params.n_points},
                         {"distortion", a.params.distortion},
                         {"layout", "<signer>/<genuine|forgery>/<idx>.csv"},
                         {"columns", "x,y,pressure,azimuth,altitude,t"}};
  write_corpus(ds, a.out, manifest.dump(2));
  const auto files = static_cast<long>(a.params.n_signers) * (a.params.n_genuine + a.params.n_forgery);
  out << "wrote " << files << " signatures for " << a.params.n_signers << " signers to " << a.out
      << '\n';
  return kExitOk;
}

int cmd_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
  const PipelineConfig cfg = config_for(a.data);
  const auto ds = dataset_for(a.data, cfg, err);
  const auto model = train_dataset(ds, cfg);
  for (const auto& s : model.signers) {
    const auto& d = s.diagnostics;
    out << s.signer_id << ": positives=" << s.n_train_positive
        << " negatives=" << s.n_train_negative << " sweeps=" << d.sweeps
        << " support=" << d.n_support << " bounded=" << d.n_bounded
        << " max_kkt=" << format_number(d.max_kkt_violation)
        << " train_acc=" << format_percent(100.0 * d.training_accuracy) << "%"
        << " threshold=" << format_number(s.threshold) << '\n';
  }
  save_model(model, a.model);
  out << "saved " << model.signers.size() << " signer models to " << a.model << '\n';
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const auto model = load_model(a.model);
  const SignerModel& signer = model.find(a.signer);
  std::string format = a.format;
  if (format.empty()) format = fs::path(a.signature).extension() == ".csv" ? "csv" : "svc2004";
  RawSignature sig;
  if (format == "csv") {
    sig = parse_csv_file(a.signature);
  } else if (format == "svc2004") {
    sig = parse_svc2004_file(a.signature);
  } else {
    throw Error(ErrorCode::Config, "signature format must be csv or svc2004, got " + format);
  }
  const FeatureExtractor fx(model.config);
  const double s = score(signer, fx, sig);
  const double threshold = a.threshold.value_or(signer.threshold);
  const bool genuine = s >= threshold;
  const json line = {{"signer", a.signer},
                     {"score", s},
                     {"decision", genuine ? "genuine" : "forgery"},
                     {"threshold", threshold}};
  out << line.dump() << '\n';
  return genuine ? kExitOk : kExitForgery;
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  const PipelineConfig cfg = config_for(a.data);
  const auto ds = dataset_for(a.data, cfg, err);
  const auto report = evaluate_dataset(ds, cfg);
  if (!a.report.empty()) {
    auto os = open_output(a.report);
    write_report_csv(os, report);
    finish_output(os, a.report);
  }
  if (!a.roc.empty()) {
    auto os = open_output(a.roc);
    write_roc_csv(os, report);
    finish_output(os, a.roc);
  }
  out << format_table(report) << format_aggregate_line(report) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online signature verification: transform features, PCA and an SVM per signer"};
  app.name("sigverify");
  app.require_subcommand(1);

  SynthArgs synth;
  auto* c_synth = app.add_subcommand("synth", "Write a deterministic synthetic corpus");
  c_synth->add_option("--seed", synth.params.seed)->capture_default_str();
  c_synth->add_option("--signers", synth.params.n_signers)->capture_default_str();
  c_synth->add_option("--genuine", synth.params.n_genuine)->capture_default_str();
  c_synth->add_option("--forgery", synth.params.n_forgery)->capture_default_str();
  c_synth->add_option("--points", synth.params.n_points)->capture_default_str();
  c_synth->add_option("--distortion", synth.params.distortion, "Forgery distortion in [0, 1]")
      ->capture_default_str();
  c_synth->add_option("--out", synth.out, "Output directory")->required();

  TrainArgs train;
  auto* c_train = app.add_subcommand("train", "Fit one model per signer and save them");
  add_data_options(c_train, train.data);
  c_train->add_option("--model", train.model, "Output model file")->required();

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Score one signature against a signer's model");
  c_verify->add_option("--model", verify.model)->required();
  c_verify->add_option("--signature", verify.signature, "Signature file (.csv or SVC2004 text)")
      ->required();
  c_verify->add_option("--signer", verify.signer)->required();
  c_verify->add_option("--format", verify.format, "csv or svc2004 (default: by extension)");
  c_verify->add_option("--threshold", verify.threshold,
                       "Override the calibrated decision threshold");

  EvaluateArgs evaluate;
  auto* c_eval = app.add_subcommand("evaluate", "Per-signer train/test run with EER report");
  add_data_options(c_eval, evaluate.data);
  c_eval->add_option("--report", evaluate.report, "Report CSV output");
  c_eval->add_option("--roc", evaluate.roc, "ROC CSV output");

  DataArgs show;
  auto* c_config = app.add_subcommand("config", "Print the effective configuration as JSON");
  c_config->add_option("--config", show.config, "Configuration file to validate and expand");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*c_synth) return cmd_synth(synth, out);
    if (*c_train) return cmd_train(train, out, err);
    if (*c_verify) return cmd_verify(verify, out);
    if (*c_eval) return cmd_evaluate(evaluate, out, err);
    if (*c_config) {
      out << config_to_json(config_for(show)) << '\n';
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitConfig;
}

}  // namespace sigverify
