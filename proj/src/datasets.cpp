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

#include "sigverify/datasets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <regex>
#include <sstream>

#include "sigverify/error.hpp"
#include "sigverify/rng.hpp"
#include "sigverify/text.hpp"

namespace fs = std::filesystem;

namespace sigverify {

std::string_view to_string(DatasetFormat f) {
  switch (f) {
    case DatasetFormat::svc2004: return "svc2004";
    case DatasetFormat::csv: return "csv";
    case DatasetFormat::synthetic: return "synthetic";
  }
  return "unknown";
}

DatasetFormat parse_dataset_format(std::string_view text) {
  if (text == "svc2004") return DatasetFormat::svc2004;
  if (text == "csv") return DatasetFormat::csv;
  if (text == "synthetic") return DatasetFormat::synthetic;
  throw Error(ErrorCode::InvalidArgument,
              "unknown dataset format '" + std::string(text) +
                  "' (expected svc2004, csv or synthetic)");
}

namespace {

constexpr double kDefaultSpacingMs = 10.0;

// Missing or constant timestamps are replaced with uniform 10 ms spacing.
void repair_timestamps(std::vector<SamplePoint>& pts, bool have_time) {
  const bool constant =
      std::all_of(pts.begin(), pts.end(), [&](const SamplePoint& p) { return p.t == pts.front().t; });
  if (have_time && !constant) return;
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i].t = kDefaultSpacingMs * static_cast<double>(i);
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return in;
}

double field_value(std::string_view field, std::string_view origin, std::size_t line_no) {
  const auto v = parse_double(field);
  if (!v) {
    throw Error(ErrorCode::NonNumericField,
                std::string(origin) + ":" + std::to_string(line_no) +
                    ": non-numeric field '" + std::string(field) + "'",
                line_no);
  }
  return *v;
}

void check_parsed(const RawSignature& sig, std::string_view origin) {
  try {
    validate(sig);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(origin) + ": " + e.what(), e.where());
  }
}

}  // namespace

RawSignature parse_svc2004(std::istream& in, std::string_view origin) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> expected;
  while (!expected && std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const double n = field_value(trim(line), origin, line_no);
    if (n < 0 || n != std::floor(n)) {
      throw Error(ErrorCode::HeaderMismatch,
                  std::string(origin) + ":" + std::to_string(line_no) +
                      ": point count must be a non-negative integer",
                  line_no);
    }
    expected = static_cast<std::size_t>(n);
  }
  if (!expected) {
    throw Error(ErrorCode::HeaderMismatch, std::string(origin) + ": missing point-count line", 1);
  }

  RawSignature sig;
  sig.source = SignatureSource::svc2004;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != 7 && fields.size() != 4) {
      throw Error(ErrorCode::BadColumnCount,
                  std::string(origin) + ":" + std::to_string(line_no) + ": expected 4 or 7 columns, got " +
                      std::to_string(fields.size()),
                  line_no);
    }
    if (sig.points.size() == *expected) {
      throw Error(ErrorCode::HeaderMismatch,
                  std::string(origin) + ": header announces " + std::to_string(*expected) +
                      " points but more rows follow",
                  line_no);
    }
    std::array<double, 7> v{};
    for (std::size_t i = 0; i < fields.size(); ++i) v[i] = field_value(fields[i], origin, line_no);
    SamplePoint p;
    p.x = v[0];
    p.y = v[1];
    p.t = v[2];
    p.pen_down = v[3] > 0;
    if (fields.size() == 7) {
      p.azimuth = v[4];
      p.altitude = v[5];
      p.pressure = v[6];
    }
    sig.points.push_back(p);
  }
  if (sig.points.size() != *expected) {
    throw Error(ErrorCode::HeaderMismatch,
                std::string(origin) + ": header announces " + std::to_string(*expected) +
                    " points, found " + std::to_string(sig.points.size()),
                line_no);
  }
  repair_timestamps(sig.points, true);
  check_parsed(sig, origin);
  return sig;
}

RawSignature parse_svc2004_file(const fs::path& path) {
  auto in = open_input(path);
  return parse_svc2004(in, path.string());
}

void write_svc2004(std::ostream& out, const RawSignature& sig, bool full) {
  out << sig.points.size() << '\n';
  for (const auto& p : sig.points) {
    out << format_number(p.x) << ' ' << format_number(p.y) << ' ' << format_number(p.t) << ' '
        << (p.pen_down ? 1 : 0);
    if (full) {
      out << ' ' << format_number(p.azimuth) << ' ' << format_number(p.altitude) << ' '
          << format_number(p.pressure);
    }
    out << '\n';
  }
}

RawSignature parse_csv(std::istream& in, std::string_view origin) {
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::size_t, std::less<>> columns;
  std::size_t n_columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto names = split_on(trim(line), ',');
    n_columns = names.size();
    for (std::size_t i = 0; i < names.size(); ++i) columns.emplace(std::string(trim(names[i])), i);
    break;
  }
  if (!columns.contains("x") || !columns.contains("y")) {
    throw Error(ErrorCode::BadColumnCount,
                std::string(origin) + ": CSV header must name at least x and y columns",
                line_no == 0 ? 1 : line_no);
  }
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    auto it = columns.find(name);
    if (it == columns.end()) return std::nullopt;
    return it->second;
  };
  const auto cx = column("x"), cy = column("y"), cp = column("pressure"),
             ca = column("azimuth"), cl = column("altitude"), ct = column("t");

  RawSignature sig;
  sig.source = SignatureSource::csv;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_on(trim(line), ',');
    if (fields.size() != n_columns) {
      throw Error(ErrorCode::BadColumnCount,
                  std::string(origin) + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(n_columns) + " columns, got " + std::to_string(fields.size()),
                  line_no);
    }
    auto get = [&](std::optional<std::size_t> c) {
      return c ? field_value(fields[*c], origin, line_no) : 0.0;
    };
    SamplePoint p;
    p.x = get(cx);
    p.y = get(cy);
    p.pressure = get(cp);
    p.azimuth = get(ca);
    p.altitude = get(cl);
    p.t = get(ct);
    p.pen_down = !cp || p.pressure > 0.0;
    sig.points.push_back(p);
  }
  repair_timestamps(sig.points, ct.has_value());
  check_parsed(sig, origin);
  return sig;
}

RawSignature parse_csv_file(const fs::path& path) {
  auto in = open_input(path);
  return parse_csv(in, path.string());
}

void write_csv(std::ostream& out, const RawSignature& sig) {
  out << "x,y,pressure,azimuth,altitude,t\n";
  for (const auto& p : sig.points) {
    out << format_number(p.x) << ',' << format_number(p.y) << ',' << format_number(p.pressure)
        << ',' << format_number(p.azimuth) << ',' << format_number(p.altitude) << ','
        << format_number(p.t) << '\n';
  }
}

namespace {

void sort_signers(DatasetDescriptor& ds) {
  std::sort(ds.signers.begin(), ds.signers.end(),
            [](const SignerRecord& a, const SignerRecord& b) { return a.signer_id < b.signer_id; });
  for (auto& s : ds.signers) {
    auto by_index = [](const RawSignature& a, const RawSignature& b) {
      return a.sample_index < b.sample_index;
    };
    std::sort(s.genuine.begin(), s.genuine.end(), by_index);
    std::sort(s.forgeries.begin(), s.forgeries.end(), by_index);
  }
}

void require_directory(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error(ErrorCode::EmptyDataset, root.string() + " is not a readable directory");
  }
}

}  // namespace

DatasetDescriptor scan_svc2004_dir(const fs::path& root, int genuine_per_user) {
  require_directory(root);
  DatasetDescriptor ds;
  ds.root = root;
  ds.format = DatasetFormat::svc2004;
  const std::regex pattern(R"(^U(\d+)S(\d+)\.TXT$)", std::regex::icase);
  std::map<int, SignerRecord> by_user;
  std::vector<std::string> unparsable;

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    const std::string name = path.filename().string();
    std::smatch m;
    if (!std::regex_match(name, m, pattern)) {
      ds.warnings.push_back("ignored file with unexpected name: " + name);
      continue;
    }
    const int user = std::stoi(m[1].str());
    const int sample = std::stoi(m[2].str());
    try {
      RawSignature sig = parse_svc2004_file(path);
      char id[32];
      std::snprintf(id, sizeof id, "U%03d", user);
      sig.signer_id = id;
      sig.sample_index = sample;
      sig.label = sample <= genuine_per_user ? Label::genuine : Label::forgery;
      auto& rec = by_user[user];
      rec.signer_id = id;
      (sig.label == Label::genuine ? rec.genuine : rec.forgeries).push_back(std::move(sig));
    } catch (const Error& e) {
      unparsable.push_back(name);
      ds.warnings.push_back(std::string("unparsable file skipped: ") + e.what());
    }
  }
  for (auto& [user, rec] : by_user) {
    if (rec.genuine.empty()) {
      ds.warnings.push_back("signer " + rec.signer_id + " has no genuine samples; dropped");
      continue;
    }
    ds.signers.push_back(std::move(rec));
  }
  if (ds.signers.empty()) {
    if (!unparsable.empty()) {
      std::string list;
      for (const auto& n : unparsable) list += (list.empty() ? "" : ", ") + n;
      throw Error(ErrorCode::UnparsableFile, "no usable signer; unparsable files: " + list);
    }
    throw Error(ErrorCode::EmptyDataset, "no U<user>S<sample>.TXT files under " + root.string());
  }
  sort_signers(ds);
  return ds;
}

DatasetDescriptor scan_csv_dir(const fs::path& root) {
  require_directory(root);
  DatasetDescriptor ds;
  ds.root = root;
  ds.format = DatasetFormat::csv;
  std::vector<fs::path> signer_dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) signer_dirs.push_back(entry.path());
  }
  std::sort(signer_dirs.begin(), signer_dirs.end());
  for (const auto& dir : signer_dirs) {
    SignerRecord rec;
    rec.signer_id = dir.filename().string();
    for (Label label : {Label::genuine, Label::forgery}) {
      const fs::path sub = dir / std::string(to_string(label));
      std::error_code ec;
      if (!fs::is_directory(sub, ec)) continue;
      for (const auto& entry : fs::directory_iterator(sub)) {
        const auto& path = entry.path();
        if (!entry.is_regular_file() || path.extension() != ".csv") continue;
        const auto idx = parse_double(path.stem().string());
        if (!idx) {
          ds.warnings.push_back("ignored file with non-numeric name: " + path.string());
          continue;
        }
        try {
          RawSignature sig = parse_csv_file(path);
          sig.signer_id = rec.signer_id;
          sig.sample_index = static_cast<int>(*idx);
          sig.label = label;
          (label == Label::genuine ? rec.genuine : rec.forgeries).push_back(std::move(sig));
        } catch (const Error& e) {
          ds.warnings.push_back(std::string("unparsable file skipped: ") + e.what());
        }
      }
    }
    if (rec.genuine.empty()) {
      ds.warnings.push_back("directory " + dir.string() + " has no genuine samples; ignored");
      continue;
    }
    ds.signers.push_back(std::move(rec));
  }
  if (ds.signers.empty()) {
    throw Error(ErrorCode::EmptyDataset,
                "no <signer>/genuine/<idx>.csv files under " + root.string());
  }
  sort_signers(ds);
  return ds;
}

DatasetDescriptor load_dataset(const fs::path& root, DatasetFormat format,
                               int svc_genuine_per_user) {
  switch (format) {
    case DatasetFormat::svc2004: return scan_svc2004_dir(root, svc_genuine_per_user);
    case DatasetFormat::csv:
    case DatasetFormat::synthetic: {
      auto ds = scan_csv_dir(root);
      ds.format = format;
      return ds;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown dataset format");
}

void check_params(const SynthParams& p) {
  if (p.n_signers < 1 || p.n_genuine < 1 || p.n_forgery < 1) {
    throw Error(ErrorCode::InvalidArgument, "synthetic corpus counts must be >= 1");
  }
  if (p.n_points < 2) throw Error(ErrorCode::InvalidArgument, "n_points must be >= 2");
  if (!(p.distortion >= 0.0 && p.distortion <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "distortion must lie in [0, 1]");
  }
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Harmonics {
  std::array<double, 3> amp{};
  std::array<double, 3> freq{};
  std::array<double, 3> phase{};

  double at(double t) const {
    double v = 0.0;
    for (std::size_t h = 0; h < 3; ++h) v += amp[h] * std::sin(kTwoPi * freq[h] * t + phase[h]);
    return v;
  }
};

// A signer's writing template; samples are jittered or distorted copies.
struct Template {
  double x_drift = 0.0;
  double y_drift = 0.0;
  Harmonics x, y;
  double p_peak = 0.0;
  double p_mod = 0.0;
  double p_freq = 0.0;
  double p_phase = 0.0;
  double az_base = 0.0, az_drift = 0.0;
  double alt_base = 0.0, alt_drift = 0.0;
  double warp = 0.0;  // coefficient of sin(pi t) in the time warp
};

Template make_template(SplitMix64& rng) {
  Template t;
  t.x_drift = rng.uniform(1500.0, 3000.0);
  t.y_drift = rng.uniform(-300.0, 300.0);
  const std::array<std::array<double, 2>, 3> x_amp = {{{400, 900}, {150, 400}, {50, 200}}};
  const std::array<std::array<double, 2>, 3> y_amp = {{{300, 700}, {100, 300}, {40, 150}}};
  const std::array<std::array<double, 2>, 3> freq = {{{1.0, 2.0}, {2.5, 4.0}, {4.5, 7.0}}};
  for (std::size_t h = 0; h < 3; ++h) {
    t.x.amp[h] = rng.uniform(x_amp[h][0], x_amp[h][1]);
    t.x.freq[h] = rng.uniform(freq[h][0], freq[h][1]);
    t.x.phase[h] = rng.uniform(0.0, kTwoPi);
    t.y.amp[h] = rng.uniform(y_amp[h][0], y_amp[h][1]);
    t.y.freq[h] = rng.uniform(freq[h][0], freq[h][1]);
    t.y.phase[h] = rng.uniform(0.0, kTwoPi);
  }
  t.p_peak = rng.uniform(400.0, 800.0);
  t.p_mod = rng.uniform(0.1, 0.3);
  t.p_freq = rng.uniform(2.0, 5.0);
  t.p_phase = rng.uniform(0.0, kTwoPi);
  t.az_base = rng.uniform(100.0, 300.0);
  t.az_drift = rng.uniform(-40.0, 40.0);
  t.alt_base = rng.uniform(40.0, 70.0);
  t.alt_drift = rng.uniform(-10.0, 10.0);
  return t;
}

// Natural variation between two genuine attempts.
void apply_jitter(Template& t, SplitMix64& rng) {
  for (Harmonics* hs : {&t.x, &t.y}) {
    for (std::size_t h = 0; h < 3; ++h) {
      hs->amp[h] *= 1.0 + 0.03 * rng.normal();
      hs->phase[h] += 0.05 * rng.normal();
    }
  }
  t.x_drift *= 1.0 + 0.03 * rng.normal();
  t.y_drift += 10.0 * rng.normal();
  t.p_peak *= 1.0 + 0.05 * rng.normal();
  t.p_phase += 0.05 * rng.normal();
  t.az_base += 2.0 * rng.normal();
  t.alt_base += 1.0 * rng.normal();
  t.warp += 0.02 * rng.normal();
}

// Imitation error: a per-signer forger style mixed with per-attempt error,
// scaled by the distortion level.
void apply_forgery(Template& t, double delta, SplitMix64& style, SplitMix64& attempt) {
  auto c = [&] { return 0.6 * style.uniform(-1.0, 1.0) + 0.4 * attempt.uniform(-1.0, 1.0); };
  for (Harmonics* hs : {&t.x, &t.y}) {
    for (std::size_t h = 0; h < 3; ++h) {
      hs->amp[h] *= 1.0 + 0.5 * delta * c();
      hs->phase[h] += (std::numbers::pi / 4.0) * delta * c();
      hs->freq[h] *= 1.0 + 0.1 * delta * c();
    }
  }
  t.x_drift *= 1.0 + 0.3 * delta * c();
  t.p_peak *= 1.0 + 0.5 * delta * c();
  t.p_freq *= 1.0 + 0.2 * delta * c();
  t.az_drift += 20.0 * delta * c();
  t.alt_drift += 10.0 * delta * c();
  t.warp += 0.25 * delta * c();
}

RawSignature render(const Template& t, int n_points, SplitMix64& noise) {
  RawSignature sig;
  sig.source = SignatureSource::synthetic;
  sig.points.resize(static_cast<std::size_t>(n_points));
  const double x0 = 20.0 * noise.normal();
  const double y0 = 20.0 * noise.normal();
  // |warp| < 1/pi keeps the warped time axis increasing.
  const double warp = std::clamp(t.warp, -0.3, 0.3);
  for (int i = 0; i < n_points; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(n_points - 1);
    const double tau = s + warp * std::sin(std::numbers::pi * s);
    auto& p = sig.points[static_cast<std::size_t>(i)];
    p.t = kDefaultSpacingMs * static_cast<double>(i);
    p.x = x0 + t.x_drift * tau + t.x.at(tau) + 3.0 * noise.normal();
    p.y = y0 + t.y_drift * tau + t.y.at(tau) + 3.0 * noise.normal();
    const double envelope = std::pow(std::max(0.0, std::sin(std::numbers::pi * tau)), 0.6);
    p.pressure = std::max(0.0, t.p_peak * envelope *
                                       (1.0 + t.p_mod * std::sin(kTwoPi * t.p_freq * tau + t.p_phase)) +
                                   8.0 * noise.normal());
    p.azimuth = t.az_base + t.az_drift * tau + noise.normal();
    p.altitude = t.alt_base + t.alt_drift * tau + 0.5 * noise.normal();
    p.pen_down = p.pressure > 0.0;
  }
  return sig;
}

enum StreamKind : std::uint64_t { kTemplate = 0, kGenuine = 1, kForgery = 2, kForgerStyle = 3 };

}  // namespace

DatasetDescriptor generate_synthetic(const SynthParams& params) {
  check_params(params);
  DatasetDescriptor ds;
  ds.format = DatasetFormat::synthetic;
  for (int s = 1; s <= params.n_signers; ++s) {
    const auto signer = static_cast<std::uint64_t>(s);
    SplitMix64 trng = SplitMix64::keyed(params.seed, signer, 0, kTemplate);
    const Template base = make_template(trng);

    SignerRecord rec;
    char id[32];
    std::snprintf(id, sizeof id, "s%03d", s);
    rec.signer_id = id;

    for (int g = 1; g <= params.n_genuine; ++g) {
      SplitMix64 rng = SplitMix64::keyed(params.seed, signer, static_cast<std::uint64_t>(g), kGenuine);
      Template t = base;
      apply_jitter(t, rng);
      RawSignature sig = render(t, params.n_points, rng);
      sig.signer_id = rec.signer_id;
      sig.sample_index = g;
      sig.label = Label::genuine;
      rec.genuine.push_back(std::move(sig));
    }
    SplitMix64 style = SplitMix64::keyed(params.seed, signer, 0, kForgerStyle);
    const auto style_state = style;
    for (int f = 1; f <= params.n_forgery; ++f) {
      const int index = params.n_genuine + f;
      SplitMix64 rng = SplitMix64::keyed(params.seed, signer, static_cast<std::uint64_t>(index), kForgery);
      Template t = base;
      apply_jitter(t, rng);
      style = style_state;  // the same style draws for every attempt
      apply_forgery(t, params.distortion, style, rng);
      RawSignature sig = render(t, params.n_points, rng);
      sig.signer_id = rec.signer_id;
      sig.sample_index = index;
      sig.label = Label::forgery;
      rec.forgeries.push_back(std::move(sig));
    }
    ds.signers.push_back(std::move(rec));
  }
  return ds;
}

void write_corpus(const DatasetDescriptor& ds, const fs::path& out,
                  const std::string& manifest_json) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + out.string() + ": " + ec.message());
  auto write_file = [](const fs::path& path, auto&& body) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorCode::Io, "cannot write " + path.string());
    body(os);
    os.flush();
    if (!os) throw Error(ErrorCode::Io, "write failed for " + path.string());
  };
  for (const auto& rec : ds.signers) {
    for (Label label : {Label::genuine, Label::forgery}) {
      const fs::path dir = out / rec.signer_id / std::string(to_string(label));
      fs::create_directories(dir, ec);
      if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
      const auto& sigs = label == Label::genuine ? rec.genuine : rec.forgeries;
      for (const auto& sig : sigs) {
        char name[32];
        std::snprintf(name, sizeof name, "%03d.csv", sig.sample_index);
        write_file(dir / name, [&](std::ostream& os) { write_csv(os, sig); });
      }
    }
  }
  write_file(out / "manifest.json", [&](std::ostream& os) { os << manifest_json << '\n'; });
}

TrainTestSplit split(const SignerRecord& record, std::size_t n_train_genuine,
                     std::size_t n_train_forgery, std::uint64_t seed) {
  if (n_train_genuine >= record.genuine.size()) {
    throw Error(ErrorCode::NotEnoughSamples,
                "signer " + record.signer_id + ": requested " + std::to_string(n_train_genuine) +
                    " training genuine samples of " + std::to_string(record.genuine.size()) +
                    " (at least one must remain for testing)");
  }
  if (record.forgeries.empty() ? n_train_forgery > 0
                               : n_train_forgery >= record.forgeries.size()) {
    throw Error(ErrorCode::NotEnoughSamples,
                "signer " + record.signer_id + ": requested " + std::to_string(n_train_forgery) +
                    " training forgeries of " + std::to_string(record.forgeries.size()) +
                    " (at least one must remain for testing)");
  }
  SplitMix64 rng = SplitMix64::keyed(seed, fnv1a(record.signer_id));
  TrainTestSplit out;
  out.train.signer_id = out.test.signer_id = record.signer_id;
  auto divide = [&](const std::vector<RawSignature>& all, std::size_t n_train,
                    std::vector<RawSignature>& train, std::vector<RawSignature>& test) {
    std::vector<std::size_t> idx(all.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    rng.shuffle(std::span<std::size_t>(idx));
    for (std::size_t i = 0; i < idx.size(); ++i) {
      (i < n_train ? train : test).push_back(all[idx[i]]);
    }
  };
  divide(record.genuine, n_train_genuine, out.train.genuine, out.test.genuine);
  divide(record.forgeries, n_train_forgery, out.train.forgeries, out.test.forgeries);
  return out;
}

}  // namespace sigverify
