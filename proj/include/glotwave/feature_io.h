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

// GSWF feature file, version 1. All fields little-endian.
//
//   offset  size  field
//   0       4     magic "GSWF"
//   4       4     format version (u32) = 1
//   8       4     fs (u32)
//   12      4     fft_size (u32)
//   16      1     mode (u8): 0 = parametric, 1 = full
//   17      4     segment count S (u32)
//   21      ...   S segment records
//
// Segment record, K = fft_size / 2 + 1:
//   position u64 | voiced u8 | log_f0 f32 | gain f32 | lsp 40 x f32 |
//   phase_feature K x f32 | (full mode only) log_mag K x f32
//
// Record size: 177 + 4K bytes parametric, 177 + 8K bytes full.

#ifndef GLOTWAVE_FEATURE_IO_H_
#define GLOTWAVE_FEATURE_IO_H_

#include <cstdint>
#include <string>

#include "glotwave/analysis.h"

namespace glotwave {

inline constexpr char kFeatureMagic[4] = {'G', 'S', 'W', 'F'};
inline constexpr uint32_t kFeatureVersion = 1;
inline constexpr int kFeatureLspDim = 40;
inline constexpr size_t kFeatureHeaderBytes = 21;

size_t FeatureRecordBytes(int fft_size, FeatureMode mode);

std::string SerializeFeatureStream(const FeatureStream& stream);

// Values are widened back to double; phase features are re-wrapped into
// (-pi, pi] after float rounding. Truncation raises FormatError with the
// byte offset where data ran out.
FeatureStream ParseFeatureStream(const std::string& bytes);

void WriteFeatureFile(const FeatureStream& stream, const std::string& path);
FeatureStream ReadFeatureFile(const std::string& path);

}  // namespace glotwave

#endif  // GLOTWAVE_FEATURE_IO_H_
