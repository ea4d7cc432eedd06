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

#include "glotwave/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "glotwave/dsp/fft.h"
#include "glotwave/errors.h"

namespace glotwave {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int ParseInt(const std::string& key, const std::string& v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
  }
  return out;
}

double ParseDouble(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
  }
  return out;
}

bool ParseBool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': expected true or false, got '" + v + "'");
}

std::string FormatDouble(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void ValidatePipelineConfig(const PipelineConfig& c) {
  if (c.fft_size < 64 || !dsp::IsPowerOfTwo(c.fft_size)) {
    throw ConfigError("fft_size must be a power of two >= 64, got " +
                      std::to_string(c.fft_size));
  }
  if (c.lsp_order < 2 || c.lsp_order % 2 != 0 || c.lsp_order >= c.fft_size / 2) {
    throw ConfigError("lsp_order must be even and below fft_size / 2, got " +
                      std::to_string(c.lsp_order));
  }
  if (c.num_candidates < 1) throw ConfigError("num_candidates must be positive");
  if (!(c.f0_min > 0.0 && c.f0_min < c.f0_max)) {
    throw ConfigError("need 0 < f0_min < f0_max, got " + FormatDouble(c.f0_min) +
                      " and " + FormatDouble(c.f0_max));
  }
  if (!(c.unvoiced_shift_s > 0.0)) throw ConfigError("unvoiced_shift_s must be positive");
  if (!(c.f0_frame_shift_s > 0.0)) throw ConfigError("f0_frame_shift_s must be positive");
  if (!(c.ola_floor > 0.0 && c.ola_floor < 1.0)) {
    throw ConfigError("ola_floor must lie in (0, 1)");
  }
}

void SetConfigValue(PipelineConfig* c, const std::string& key, const std::string& v) {
  if (key == "fft_size") {
    c->fft_size = ParseInt(key, v);
  } else if (key == "lsp_order") {
    c->lsp_order = ParseInt(key, v);
  } else if (key == "num_candidates") {
    c->num_candidates = ParseInt(key, v);
  } else if (key == "f0_min") {
    c->f0_min = ParseDouble(key, v);
  } else if (key == "f0_max") {
    c->f0_max = ParseDouble(key, v);
  } else if (key == "unvoiced_shift_s") {
    c->unvoiced_shift_s = ParseDouble(key, v);
  } else if (key == "f0_frame_shift_s") {
    c->f0_frame_shift_s = ParseDouble(key, v);
  } else if (key == "mode") {
    if (v == "full") {
      c->mode = FeatureMode::kFull;
    } else if (v == "parametric") {
      c->mode = FeatureMode::kParametric;
    } else {
      throw ConfigError("config key 'mode': expected full or parametric, got '" + v + "'");
    }
  } else if (key == "cost_norm") {
    if (v == "abs") {
      c->cost_norm = CostNorm::kAbsolute;
    } else if (v == "squared") {
      c->cost_norm = CostNorm::kSquared;
    } else {
      throw ConfigError("config key 'cost_norm': expected abs or squared, got '" + v + "'");
    }
  } else if (key == "traversal") {
    if (v == "middle_out") {
      c->traversal = Traversal::kMiddleOut;
    } else if (v == "left_to_right") {
      c->traversal = Traversal::kLeftToRight;
    } else {
      throw ConfigError("config key 'traversal': expected middle_out or left_to_right");
    }
  } else if (key == "dpd_wrap") {
    c->dpd_wrap = ParseBool(key, v);
  } else if (key == "ola_floor") {
    c->ola_floor = ParseDouble(key, v);
  } else if (key == "truncate_long_segments") {
    c->truncate_long_segments = ParseBool(key, v);
  } else if (key == "min_phase_from_envelope") {
    c->min_phase_from_envelope = ParseBool(key, v);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

PipelineConfig ParseConfigText(const std::string& text, const PipelineConfig& base) {
  PipelineConfig cfg = base;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    SetConfigValue(&cfg, Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
  }
  return cfg;
}

PipelineConfig LoadConfigFile(const std::string& path, const PipelineConfig& base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return ParseConfigText(ss.str(), base);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string ConfigToText(const PipelineConfig& c) {
  std::ostringstream os;
  os << "fft_size = " << c.fft_size << "\n"
     << "lsp_order = " << c.lsp_order << "\n"
     << "num_candidates = " << c.num_candidates << "\n"
     << "f0_min = " << FormatDouble(c.f0_min) << "\n"
     << "f0_max = " << FormatDouble(c.f0_max) << "\n"
     << "unvoiced_shift_s = " << FormatDouble(c.unvoiced_shift_s) << "\n"
     << "f0_frame_shift_s = " << FormatDouble(c.f0_frame_shift_s) << "\n"
     << "mode = " << (c.mode == FeatureMode::kFull ? "full" : "parametric") << "\n"
     << "cost_norm = " << (c.cost_norm == CostNorm::kAbsolute ? "abs" : "squared") << "\n"
     << "traversal = "
     << (c.traversal == Traversal::kMiddleOut ? "middle_out" : "left_to_right") << "\n"
     << "dpd_wrap = " << (c.dpd_wrap ? "true" : "false") << "\n"
     << "ola_floor = " << FormatDouble(c.ola_floor) << "\n"
     << "truncate_long_segments = " << (c.truncate_long_segments ? "true" : "false") << "\n"
     << "min_phase_from_envelope = " << (c.min_phase_from_envelope ? "true" : "false")
     << "\n";
  return os.str();
}

AnalysisConfig ToAnalysisConfig(const PipelineConfig& c) {
  AnalysisConfig a;
  a.fft_size = c.fft_size;
  a.lsp_order = c.lsp_order;
  a.mode = c.mode;
  a.truncate_long_segments = c.truncate_long_segments;
  a.detection.num_candidates = c.num_candidates;
  a.detection.unvoiced_shift_s = c.unvoiced_shift_s;
  a.detection.f0_min = c.f0_min;
  a.detection.f0_max = c.f0_max;
  a.detection.cost_norm = c.cost_norm;
  a.detection.traversal = c.traversal;
  return a;
}

SynthesisConfig ToSynthesisConfig(const PipelineConfig& c) {
  SynthesisConfig s;
  s.ola_floor = c.ola_floor;
  s.truncate_long_segments = c.truncate_long_segments;
  s.min_phase_from_envelope = c.min_phase_from_envelope;
  return s;
}

MetricsConfig ToMetricsConfig(const PipelineConfig& c) {
  MetricsConfig m;
  m.dpd_wrap = c.dpd_wrap;
  return m;
}

}  // namespace glotwave
