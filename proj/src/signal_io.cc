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

#include "glotwave/signal_io.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "glotwave/errors.h"

namespace glotwave {
namespace {

constexpr double kPcmScale = 32768.0;

uint32_t ReadU32(const std::string& b, size_t off) {
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<uint8_t>(b[off + i]);
  return v;
}

uint16_t ReadU16(const std::string& b, size_t off) {
  return static_cast<uint16_t>(static_cast<uint8_t>(b[off]) |
                               (static_cast<uint8_t>(b[off + 1]) << 8));
}

void PutU32(std::string& b, uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutU16(std::string& b, uint16_t v) {
  b.push_back(static_cast<char>(v & 0xff));
  b.push_back(static_cast<char>(v >> 8));
}

}  // namespace

double F0Contour::ValueAt(double time_s) const {
  if (values.empty()) return 0.0;
  const double pos = std::round(time_s / frame_shift_s);
  if (pos <= 0) return values.front();
  const auto idx = static_cast<size_t>(pos);
  return idx >= values.size() ? values.back() : values[idx];
}

Waveform ReadWav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open WAV file: " + path);
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || bytes.compare(0, 4, "RIFF") != 0 ||
      bytes.compare(8, 4, "WAVE") != 0) {
    throw FormatError(path + ": not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  int fs = 0;
  size_t offset = 12;
  while (offset + 8 <= bytes.size()) {
    const std::string id = bytes.substr(offset, 4);
    const uint32_t size = ReadU32(bytes, offset + 4);
    const size_t body = offset + 8;
    if (body + size > bytes.size() && id != "data") {
      throw FormatError(path + ": chunk '" + id + "' runs past end of file");
    }
    if (id == "fmt ") {
      if (size < 16) throw FormatError(path + ": fmt chunk too short");
      const uint16_t format = ReadU16(bytes, body);
      const uint16_t channels = ReadU16(bytes, body + 2);
      const uint32_t rate = ReadU32(bytes, body + 4);
      const uint16_t bits = ReadU16(bytes, body + 14);
      if (format != 1) {
        throw FormatError(path + ": audio_format is " + std::to_string(format) +
                          ", expected 1 (PCM)");
      }
      if (channels != 1) {
        throw FormatError(path + ": num_channels is " +
                          std::to_string(channels) + ", expected 1 (mono)");
      }
      if (bits != 16) {
        throw FormatError(path + ": bits_per_sample is " +
                          std::to_string(bits) + ", expected 16");
      }
      if (rate == 0) throw FormatError(path + ": sample_rate is 0");
      fs = static_cast<int>(rate);
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw FormatError(path + ": data chunk before fmt chunk");
      const size_t avail = std::min<size_t>(size, bytes.size() - body);
      if (avail != size) {
        throw FormatError(path + ": data chunk truncated at byte offset " +
                          std::to_string(bytes.size()));
      }
      Waveform w;
      w.fs = fs;
      w.samples.resize(size / 2);
      for (size_t i = 0; i < w.samples.size(); ++i) {
        const auto code = static_cast<int16_t>(ReadU16(bytes, body + 2 * i));
        w.samples[i] = code / kPcmScale;
      }
      if (w.samples.empty()) throw FormatError(path + ": data chunk is empty");
      return w;
    }
    offset = body + size + (size & 1);
  }
  throw FormatError(path + ": no data chunk");
}

void WriteWav(const Waveform& w, const std::string& path) {
  ValidateWaveform(w);
  std::string out;
  const auto data_bytes = static_cast<uint32_t>(w.samples.size() * 2);
  out.reserve(44 + data_bytes);
  out += "RIFF";
  PutU32(out, 36 + data_bytes);
  out += "WAVEfmt ";
  PutU32(out, 16);
  PutU16(out, 1);
  PutU16(out, 1);
  PutU32(out, static_cast<uint32_t>(w.fs));
  PutU32(out, static_cast<uint32_t>(w.fs) * 2);
  PutU16(out, 2);
  PutU16(out, 16);
  out += "data";
  PutU32(out, data_bytes);
  for (double s : w.samples) {
    const double code = std::clamp(std::round(s * kPcmScale), -32768.0, 32767.0);
    PutU16(out, static_cast<uint16_t>(static_cast<int16_t>(code)));
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write WAV file: " + path);
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("write failed: " + path);
}

F0Contour ParseF0Ref(const std::string& text, double frame_shift_s) {
  if (!(frame_shift_s > 0)) throw ConfigError("F0 frame shift must be > 0");
  F0Contour f0;
  f0.frame_shift_s = frame_shift_s;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) {
      throw FormatError("F0 file line " + std::to_string(line_no) +
                        ": empty line");
    }
    const std::string token = line.substr(first, line.find_last_not_of(" \t") - first + 1);
    size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || !std::isfinite(value)) {
      throw FormatError("F0 file line " + std::to_string(line_no) +
                        ": not a number: '" + token + "'");
    }
    if (value < 0) {
      throw ValidationError("F0 file line " + std::to_string(line_no) +
                            ": negative value " + token);
    }
    f0.values.push_back(value);
  }
  if (f0.values.empty()) throw FormatError("F0 file is empty");
  return f0;
}

F0Contour ReadF0Ref(const std::string& path, double frame_shift_s) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open F0 file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return ParseF0Ref(ss.str(), frame_shift_s);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void ValidateWaveform(const Waveform& w) {
  if (w.fs <= 0) throw ValidationError("waveform sample rate must be > 0");
  if (w.samples.empty()) throw ValidationError("waveform is empty");
  for (size_t i = 0; i < w.samples.size(); ++i) {
    if (!std::isfinite(w.samples[i])) {
      throw ValidationError("waveform sample " + std::to_string(i) +
                            " is not finite");
    }
    if (std::abs(w.samples[i]) > 1.0) {
      throw ValidationError("waveform sample " + std::to_string(i) +
                            " exceeds full scale");
    }
  }
}

void ValidateF0Contour(const F0Contour& f0, double f0_min, double f0_max) {
  if (!(f0.frame_shift_s > 0)) throw ValidationError("F0 frame shift must be > 0");
  if (f0.values.empty()) throw ValidationError("F0 contour is empty");
  for (size_t i = 0; i < f0.values.size(); ++i) {
    const double v = f0.values[i];
    if (v != 0.0 && !(v >= f0_min && v <= f0_max)) {
      throw ValidationError("F0 frame " + std::to_string(i) + " value " +
                            std::to_string(v) + " Hz outside [" +
                            std::to_string(f0_min) + ", " +
                            std::to_string(f0_max) + "]");
    }
  }
}

}  // namespace glotwave
