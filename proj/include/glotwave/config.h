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

// Pipeline settings shared by the command-line tools, loadable from a
// "key = value" text file.

#ifndef GLOTWAVE_CONFIG_H_
#define GLOTWAVE_CONFIG_H_

#include <string>

#include "glotwave/analysis.h"
#include "glotwave/metrics.h"
#include "glotwave/synthesis.h"

namespace glotwave {

// Environment variable holding a config file path, used when no --config
// flag is given.
inline constexpr const char* kConfigEnvVar = "GLOTWAVE_CONFIG";

struct PipelineConfig {
  int fft_size = 512;
  int lsp_order = 40;
  int num_candidates = 5;
  double f0_min = 50.0;
  double f0_max = 500.0;
  double unvoiced_shift_s = 0.005;
  double f0_frame_shift_s = 0.005;
  FeatureMode mode = FeatureMode::kFull;
  CostNorm cost_norm = CostNorm::kAbsolute;
  Traversal traversal = Traversal::kMiddleOut;
  bool dpd_wrap = true;
  double ola_floor = 1e-3;
  bool truncate_long_segments = false;
  bool min_phase_from_envelope = false;
};

// Throws ConfigError naming the first offending key.
void ValidatePipelineConfig(const PipelineConfig& cfg);

// Sets one key from its text value; throws ConfigError on an unknown key or
// an unparsable value.
void SetConfigValue(PipelineConfig* cfg, const std::string& key,
                    const std::string& value);

// Lines of "key = value"; '#' starts a comment. Applied on top of `base`.
PipelineConfig ParseConfigText(const std::string& text,
                               const PipelineConfig& base = {});
PipelineConfig LoadConfigFile(const std::string& path,
                              const PipelineConfig& base = {});

std::string ConfigToText(const PipelineConfig& cfg);

AnalysisConfig ToAnalysisConfig(const PipelineConfig& cfg);
SynthesisConfig ToSynthesisConfig(const PipelineConfig& cfg);
MetricsConfig ToMetricsConfig(const PipelineConfig& cfg);

}  // namespace glotwave

#endif  // GLOTWAVE_CONFIG_H_
