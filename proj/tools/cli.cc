// Copyright 2026 The Glotwave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "glotwave/analysis.h"
#include "glotwave/config.h"
#include "glotwave/dsp/f0_tracker.h"
#include "glotwave/errors.h"
#include "glotwave/feature_io.h"
#include "glotwave/gci.h"
#include "glotwave/metrics.h"
#include "glotwave/signal_io.h"
#include "glotwave/synthesis.h"
#include "json.hpp"

namespace glotwave::cli {
namespace {

constexpr double kDurationTolerance = 0.10;
constexpr double kAutoF0Margin = 1.1;

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string mode;

  std::string wav, f0, out;
  std::string features;
  bool min_phase = false;
  bool generate = false;
  std::string out_full, out_min_phase, report;
  std::string pred_wav, ref_wav, pred_features, ref_features;
  bool json = false;
  std::string list;
  int jobs = 1;
};

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo:
    case ErrorKind::kFormat:
      return kExitIo;
    case ErrorKind::kValidation:
      return kExitValidation;
    case ErrorKind::kConfig:
      return kExitConfig;
    case ErrorKind::kPipeline:
      return kExitPipeline;
  }
  return kExitPipeline;
}

PipelineConfig ResolveConfig(const Options& o) {
  PipelineConfig cfg;
  std::string path = o.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnvVar); env && *env) path = env;
  }
  if (!path.empty()) cfg = LoadConfigFile(path, cfg);
  for (const auto& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--set expects key=value, got '" + kv + "'");
    }
    SetConfigValue(&cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!o.mode.empty()) SetConfigValue(&cfg, "mode", o.mode);
  ValidatePipelineConfig(cfg);
  return cfg;
}

Waveform LoadWav(const std::string& path) {
  Waveform w = ReadWav(path);
  ValidateWaveform(w);
  return w;
}

F0Contour LoadF0(const std::string& spec, const Waveform& w, const PipelineConfig& cfg) {
  F0Contour f0;
  if (spec == "auto") {
    dsp::F0TrackerOptions opt;
    opt.frame_shift_s = cfg.f0_frame_shift_s;
    // Search only F0 values whose two-period segment fits the FFT.
    opt.f0_min = std::max(cfg.f0_min, kAutoF0Margin * 2.0 * w.fs / (cfg.fft_size - 1));
    opt.f0_max = cfg.f0_max;
    f0 = dsp::EstimateF0Autocorr(w, opt);
  } else {
    f0 = ReadF0Ref(spec, cfg.f0_frame_shift_s);
  }
  ValidateF0Contour(f0, cfg.f0_min, cfg.f0_max);
  const double dw = w.duration_s();
  if (std::abs(f0.duration_s() - dw) > kDurationTolerance * dw) {
    throw ValidationError("F0 contour covers " + std::to_string(f0.duration_s()) +
                          " s but the waveform lasts " + std::to_string(dw) + " s");
  }
  return f0;
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("failed writing '" + path + "'");
}

std::string TrackToText(const GciTrack& g) {
  std::string out;
  for (size_t i = 0; i < g.size(); ++i) {
    out += std::to_string(g.instants[i]);
    out += g.voiced[i] ? " 1\n" : " 0\n";
  }
  return out;
}

// Re-windows `pred` at the reference instants so frames line up one to one.
FeatureStream AnalyzeAgainst(const Waveform& pred, const Waveform& ref,
                             const GciTrack& track, const AnalysisConfig& acfg) {
  Waveform padded = pred;
  padded.samples.resize(ref.samples.size(), 0.0);
  return AnalyzeTrack(padded, track, acfg);
}

int CmdGci(const Options& o, std::ostream& out) {
  const auto cfg = ResolveConfig(o);
  const auto w = LoadWav(o.wav);
  const auto f0 = LoadF0(o.f0, w, cfg);
  const auto track = DetectGci(w, f0, ToAnalysisConfig(cfg).detection);
  WriteText(o.out, TrackToText(track));
  out << "gci: " << track.size() << " instants -> " << o.out << "\n";
  return kExitOk;
}

int CmdAnalyze(const Options& o, std::ostream& out) {
  const auto cfg = ResolveConfig(o);
  const auto w = LoadWav(o.wav);
  const auto f0 = LoadF0(o.f0, w, cfg);
  const auto stream = Analyze(w, f0, ToAnalysisConfig(cfg));
  WriteFeatureFile(stream, o.out);
  out << "analyze: " << stream.segments.size() << " segments -> " << o.out << "\n";
  return kExitOk;
}

int CmdSynthesize(const Options& o, std::ostream& out) {
  const auto cfg = ResolveConfig(o);
  const auto stream = ReadFeatureFile(o.features);
  auto scfg = ToSynthesisConfig(cfg);
  if (o.generate) scfg.positions = PositionSource::kGenerated;
  const auto result = o.min_phase ? SynthesizeMinPhase(stream, scfg) : Synthesize(stream, scfg);
  WriteWav(result.waveform, o.out);
  out << "synthesize: " << result.waveform.samples.size() << " samples -> " << o.out << "\n";
  if (result.scale != 1.0) out << "synthesize: peak-normalized by " << result.scale << "\n";
  return kExitOk;
}

int CmdRoundtrip(const Options& o, std::ostream& out) {
  const auto cfg = ResolveConfig(o);
  auto acfg = ToAnalysisConfig(cfg);
  acfg.mode = FeatureMode::kFull;
  const auto scfg = ToSynthesisConfig(cfg);
  const auto mcfg = ToMetricsConfig(cfg);
  const auto w = LoadWav(o.wav);
  const auto f0 = LoadF0(o.f0, w, cfg);
  auto detection = acfg.detection;
  if (!acfg.truncate_long_segments) detection.max_gap_samples = (acfg.fft_size - 1) / 2;
  const auto track = DetectGci(w, f0, detection);
  const auto ref = AnalyzeTrack(w, track, acfg);
  const auto full = Synthesize(ref, scfg);
  const auto minp = SynthesizeMinPhase(ref, scfg);
  const auto full_rep =
      Evaluate(full.waveform, w, AnalyzeAgainst(full.waveform, w, track, acfg), ref, mcfg);
  const auto min_rep =
      Evaluate(minp.waveform, w, AnalyzeAgainst(minp.waveform, w, track, acfg), ref, mcfg);
  WriteWav(full.waveform, o.out_full);
  WriteWav(minp.waveform, o.out_min_phase);
  std::string text;
  if (o.json) {
    nlohmann::ordered_json j;
    j["full"] = nlohmann::ordered_json::parse(ReportToJson(full_rep));
    j["min_phase"] = nlohmann::ordered_json::parse(ReportToJson(min_rep));
    text = j.dump(2) + "\n";
  } else {
    std::istringstream a(ReportToText(full_rep)), b(ReportToText(min_rep));
    std::string line;
    while (std::getline(a, line)) text += "full " + line + "\n";
    while (std::getline(b, line)) text += "min_phase " + line + "\n";
  }
  WriteText(o.report, text);
  out << "roundtrip: full rmse_voiced " << full_rep.rmse_voiced.value
      << ", min_phase rmse_voiced " << min_rep.rmse_voiced.value << "\n";
  return kExitOk;
}

int CmdMetrics(const Options& o, std::ostream& out) {
  const auto cfg = ResolveConfig(o);
  const auto pred_wav = LoadWav(o.pred_wav);
  const auto ref_wav = LoadWav(o.ref_wav);
  if (pred_wav.fs != ref_wav.fs) {
    throw ValidationError("sample rates differ: " + std::to_string(pred_wav.fs) +
                          " Hz vs " + std::to_string(ref_wav.fs) + " Hz");
  }
  const auto pred = ReadFeatureFile(o.pred_features);
  const auto ref = ReadFeatureFile(o.ref_features);
  const auto report = Evaluate(pred_wav, ref_wav, pred, ref, ToMetricsConfig(cfg));
  WriteText(o.out, o.json ? ReportToJson(report) : ReportToText(report));
  out << "metrics: -> " << o.out << "\n";
  return kExitOk;
}

std::vector<std::string> SplitWords(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

int CmdBatch(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream in(o.list);
  if (!in) throw IoError("cannot open batch list '" + o.list + "'");
  if (o.jobs < 1) throw ConfigError("--jobs must be positive");
  std::vector<std::vector<std::string>> jobs;
  std::vector<int> line_numbers;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto words = SplitWords(line);
    if (words.empty()) continue;
    if (words[0] == "batch") {
      throw ConfigError(o.list + ":" + std::to_string(n) + ": nested batch is not allowed");
    }
    jobs.push_back(std::move(words));
    line_numbers.push_back(n);
  }
  std::vector<int> codes(jobs.size(), kExitOk);
  std::vector<std::string> outs(jobs.size()), errs(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      std::ostringstream so, se;
      codes[i] = RunCli(jobs[i], so, se);
      outs[i] = so.str();
      errs[i] = se.str();
    }
  };
  const int threads = std::min<int>(o.jobs, std::max<size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  int status = kExitOk;
  size_t failed = 0;
  for (size_t i = 0; i < jobs.size(); ++i) {
    out << outs[i];
    if (codes[i] != kExitOk) {
      err << o.list << ":" << line_numbers[i] << ": exit " << codes[i] << ": " << errs[i];
      if (status == kExitOk) status = codes[i];
      ++failed;
    }
  }
  out << "batch: " << jobs.size() - failed << "/" << jobs.size() << " succeeded\n";
  return status;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Glottal-synchronous speech analysis and resynthesis", "glotwave"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", o.config_path,
                 std::string("Config file (default: $") + kConfigEnvVar + ")");
  app.add_option("--set", o.overrides, "Override a config key: key=value");

  auto* gci = app.add_subcommand("gci", "Detect glottal closure instants");
  gci->add_option("--wav", o.wav, "Input WAV")->required();
  gci->add_option("--f0", o.f0, "Reference F0 file, or 'auto'")->required();
  gci->add_option("--out", o.out, "Output track, one 'sample_index voiced_flag' per line")
      ->required();

  auto* analyze = app.add_subcommand("analyze", "Write the feature stream of a waveform");
  analyze->add_option("--wav", o.wav, "Input WAV")->required();
  analyze->add_option("--f0", o.f0, "Reference F0 file, or 'auto'")->required();
  analyze->add_option("--out", o.out, "Output GSWF feature file")->required();
  analyze->add_option("--mode", o.mode, "full or parametric");

  auto* synth = app.add_subcommand("synthesize", "Resynthesize a feature file");
  synth->add_option("--features", o.features, "Input GSWF feature file")->required();
  synth->add_option("--out", o.out, "Output WAV")->required();
  synth->add_flag("--min-phase", o.min_phase, "Replace the stored phase by minimum phase");
  synth->add_flag("--generate", o.generate, "Place segments from log F0 instead of stored positions");

  auto* rt = app.add_subcommand("roundtrip", "Analyze, resynthesize and score both systems");
  rt->add_option("--wav", o.wav, "Input WAV")->required();
  rt->add_option("--f0", o.f0, "Reference F0 file, or 'auto'")->required();
  rt->add_option("--out-full", o.out_full, "Full-phase reconstruction WAV")->required();
  rt->add_option("--out-min-phase", o.out_min_phase, "Minimum-phase reconstruction WAV")
      ->required();
  rt->add_option("--report", o.report, "Metrics report")->required();
  rt->add_flag("--json", o.json, "Write the report as JSON");

  auto* met = app.add_subcommand("metrics", "Score a predicted utterance against a reference");
  met->add_option("--pred-wav", o.pred_wav)->required();
  met->add_option("--ref-wav", o.ref_wav)->required();
  met->add_option("--pred-features", o.pred_features)->required();
  met->add_option("--ref-features", o.ref_features)->required();
  met->add_option("--out", o.out, "Metrics report")->required();
  met->add_flag("--json", o.json, "Write the report as JSON");

  auto* batch = app.add_subcommand("batch", "Run a list of invocations, one per line");
  batch->add_option("--list", o.list, "File of subcommand lines")->required();
  batch->add_option("--jobs", o.jobs, "Worker threads")->default_val(1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (gci->parsed()) return CmdGci(o, out);
    if (analyze->parsed()) return CmdAnalyze(o, out);
    if (synth->parsed()) return CmdSynthesize(o, out);
    if (rt->parsed()) return CmdRoundtrip(o, out);
    if (met->parsed()) return CmdMetrics(o, out);
    if (batch->parsed()) return CmdBatch(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitPipeline;
  }
  return kExitConfig;
}

}  // namespace glotwave::cli
