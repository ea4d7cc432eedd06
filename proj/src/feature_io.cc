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

#include "glotwave/feature_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "glotwave/dsp/phase.h"
#include "glotwave/errors.h"

namespace glotwave {
namespace {

static_assert(std::endian::native == std::endian::little,
              "feature I/O assumes a little-endian host");

class Writer {
 public:
  template <typename T>
  void Put(T v) {
    char raw[sizeof(T)];
    std::memcpy(raw, &v, sizeof(T));
    out_.append(raw, sizeof(T));
  }
  void PutF32(double v) { Put(static_cast<float>(v)); }
  std::string Take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  template <typename T>
  T Get(const char* field) {
    if (offset_ + sizeof(T) > bytes_.size()) {
      throw FormatError("feature file truncated at byte offset " +
                        std::to_string(bytes_.size()) + " while reading " + field +
                        " (needed " + std::to_string(offset_ + sizeof(T)) + " bytes)");
    }
    T v;
    std::memcpy(&v, bytes_.data() + offset_, sizeof(T));
    offset_ += sizeof(T);
    return v;
  }
  double GetF32(const char* field) { return Get<float>(field); }
  size_t offset() const { return offset_; }
  size_t remaining() const { return bytes_.size() - offset_; }

 private:
  const std::string& bytes_;
  size_t offset_ = 0;
};

}  // namespace

size_t FeatureRecordBytes(int fft_size, FeatureMode mode) {
  const size_t k = static_cast<size_t>(fft_size / 2 + 1);
  const size_t base = 8 + 1 + 4 + 4 + 4 * kFeatureLspDim + 4 * k;
  return mode == FeatureMode::kFull ? base + 4 * k : base;
}

std::string SerializeFeatureStream(const FeatureStream& stream) {
  ValidateFeatureStream(stream);
  for (const auto& f : stream.segments) {
    if (f.lsp.size() != static_cast<size_t>(kFeatureLspDim)) {
      throw ConfigError("feature file format v1 stores exactly " +
                        std::to_string(kFeatureLspDim) + " LSP values, stream has " +
                        std::to_string(f.lsp.size()));
    }
  }
  Writer w;
  for (char c : kFeatureMagic) w.Put(c);
  w.Put<uint32_t>(kFeatureVersion);
  w.Put<uint32_t>(static_cast<uint32_t>(stream.fs));
  w.Put<uint32_t>(static_cast<uint32_t>(stream.fft_size));
  w.Put<uint8_t>(static_cast<uint8_t>(stream.mode));
  w.Put<uint32_t>(static_cast<uint32_t>(stream.segments.size()));
  for (size_t s = 0; s < stream.segments.size(); ++s) {
    const auto& f = stream.segments[s];
    w.Put<uint64_t>(static_cast<uint64_t>(stream.positions[s]));
    w.Put<uint8_t>(f.voiced ? 1 : 0);
    w.PutF32(f.log_f0);
    w.PutF32(f.gain);
    for (double v : f.lsp) w.PutF32(v);
    for (double v : f.phase_feature) w.PutF32(v);
    for (double v : f.log_mag_full) w.PutF32(v);
  }
  return w.Take();
}

FeatureStream ParseFeatureStream(const std::string& bytes) {
  Reader r(bytes);
  char magic[4];
  for (char& c : magic) c = r.Get<char>("magic");
  if (std::memcmp(magic, kFeatureMagic, 4) != 0) {
    throw FormatError("not a GSWF feature file (bad magic at byte offset 0)");
  }
  const auto version = r.Get<uint32_t>("version");
  if (version != kFeatureVersion) {
    throw FormatError("unsupported GSWF version " + std::to_string(version) +
                      " at byte offset 4");
  }
  FeatureStream stream;
  stream.fs = static_cast<int>(r.Get<uint32_t>("fs"));
  stream.fft_size = static_cast<int>(r.Get<uint32_t>("fft_size"));
  const auto mode = r.Get<uint8_t>("mode");
  if (mode > 1) {
    throw FormatError("invalid mode byte " + std::to_string(mode) +
                      " at byte offset 16");
  }
  stream.mode = static_cast<FeatureMode>(mode);
  const auto count = r.Get<uint32_t>("segment count");
  if (stream.fs <= 0 || stream.fft_size < 2 || stream.fft_size > (1 << 20) ||
      (stream.fft_size & (stream.fft_size - 1)) != 0) {
    throw FormatError("invalid fs/fft_size in GSWF header");
  }
  const int k = stream.num_bins();
  const size_t record = FeatureRecordBytes(stream.fft_size, stream.mode);
  if (r.remaining() < static_cast<size_t>(count) * record) {
    const size_t whole = r.remaining() / record;
    throw FormatError("feature file truncated at byte offset " +
                      std::to_string(bytes.size()) + ": header declares " +
                      std::to_string(count) + " segments, data holds " +
                      std::to_string(whole) + " complete records");
  }
  stream.segments.resize(count);
  stream.positions.resize(count);
  for (uint32_t s = 0; s < count; ++s) {
    auto& f = stream.segments[s];
    stream.positions[s] = static_cast<int64_t>(r.Get<uint64_t>("position"));
    f.voiced = r.Get<uint8_t>("voiced") != 0;
    f.log_f0 = r.GetF32("log_f0");
    f.gain = r.GetF32("gain");
    f.lsp.resize(kFeatureLspDim);
    for (double& v : f.lsp) v = r.GetF32("lsp");
    f.phase_feature.resize(k);
    for (double& v : f.phase_feature) v = dsp::WrapPhase(r.GetF32("phase_feature"));
    if (stream.mode == FeatureMode::kFull) {
      f.log_mag_full.resize(k);
      for (double& v : f.log_mag_full) v = r.GetF32("log_mag");
    }
  }
  if (r.remaining() != 0) {
    throw FormatError("trailing bytes after last segment at byte offset " +
                      std::to_string(r.offset()));
  }
  try {
    ValidateFeatureStream(stream);
  } catch (const ValidationError& e) {
    throw FormatError(std::string("feature file content invalid: ") + e.what());
  }
  return stream;
}

void WriteFeatureFile(const FeatureStream& stream, const std::string& path) {
  const std::string bytes = SerializeFeatureStream(stream);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write feature file: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path);
}

FeatureStream ReadFeatureFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open feature file: " + path);
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  try {
    return ParseFeatureStream(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace glotwave
