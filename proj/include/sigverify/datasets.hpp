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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sigverify/signal.hpp"

namespace sigverify {

enum class DatasetFormat { svc2004, csv, synthetic };

std::string_view to_string(DatasetFormat f);
DatasetFormat parse_dataset_format(std::string_view text);

struct SignerRecord {
  std::string signer_id;
  std::vector<RawSignature> genuine;
  std::vector<RawSignature> forgeries;
};

struct DatasetDescriptor {
  std::filesystem::path root;
  DatasetFormat format = DatasetFormat::csv;
  std::vector<SignerRecord> signers;  // sorted by signer_id
  /// Skipped files and other non-fatal problems found while scanning.
  std::vector<std::string> warnings;
};

/// SVC2004 text: a point count line, then that many rows of 7 columns
/// (x y t button azimuth altitude pressure) or 4 columns (x y t button).
/// Errors carry the 1-based line number in `where()`.
RawSignature parse_svc2004(std::istream& in, std::string_view origin = "<stream>");
RawSignature parse_svc2004_file(const std::filesystem::path& path);

/// Writes the 7-column layout, or the 4-column layout when `full` is false.
void write_svc2004(std::ostream& out, const RawSignature& sig, bool full = true);

/// Generic CSV with a header naming its columns; x and y are required,
/// pressure/azimuth/altitude default to 0 and t to 10 ms spacing.
RawSignature parse_csv(std::istream& in, std::string_view origin = "<stream>");
RawSignature parse_csv_file(const std::filesystem::path& path);

/// Header `x,y,pressure,azimuth,altitude,t`.
void write_csv(std::ostream& out, const RawSignature& sig);

/// Files named U<user>S<sample>.TXT (any case). Samples 1..genuine_per_user
/// are genuine, the rest forgeries. Unparsable files are reported in
/// `warnings` and skipped; throws EmptyDataset when nothing usable remains.
DatasetDescriptor scan_svc2004_dir(const std::filesystem::path& root,
                                   int genuine_per_user = 20);

/// Layout `<root>/<signer>/<genuine|forgery>/<idx>.csv`.
DatasetDescriptor scan_csv_dir(const std::filesystem::path& root);

DatasetDescriptor load_dataset(const std::filesystem::path& root, DatasetFormat format,
                               int svc_genuine_per_user = 20);

struct SynthParams {
  std::uint64_t seed = 42;
  int n_signers = 10;
  int n_genuine = 20;
  int n_forgery = 20;
  int n_points = 200;
  double distortion = 0.3;
};

/// Throws InvalidArgument on non-positive counts, n_points < 2 or a
/// distortion outside [0, 1].
void check_params(const SynthParams& p);

/// Deterministic synthetic corpus. Each signer has a template of three
/// harmonics per coordinate, a bell-shaped pressure envelope and slowly
/// drifting pen angles; genuine samples jitter the template, forgeries also
/// perturb amplitudes, phases and the time axis in proportion to
/// `distortion`. Every sample draws from a SplitMix64 stream keyed by
/// (seed, signer, sample, kind).
DatasetDescriptor generate_synthetic(const SynthParams& params);

/// Writes `<out>/<signer>/<genuine|forgery>/<idx>.csv` plus
/// `<out>/manifest.json`. Throws Io on failure.
void write_corpus(const DatasetDescriptor& ds, const std::filesystem::path& out,
                  const std::string& manifest_json);

struct TrainTestSplit {
  SignerRecord train;
  SignerRecord test;
};

/// Seeded shuffle of each class, then the first n go to training. The test
/// side keeps at least one genuine sample and, when the record has forgeries,
/// at least one forgery; otherwise NotEnoughSamples.
TrainTestSplit split(const SignerRecord& record, std::size_t n_train_genuine,
                     std::size_t n_train_forgery, std::uint64_t seed);

}  // namespace sigverify
