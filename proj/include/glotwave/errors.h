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

#ifndef GLOTWAVE_ERRORS_H_
#define GLOTWAVE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace glotwave {

// Broad failure classes. The CLI maps each class to a stable exit status.
enum class ErrorKind {
  kIo,          // file missing or unwritable
  kFormat,      // malformed WAV / F0 / feature file
  kValidation,  // inputs well-formed but inconsistent or out of range
  kConfig,      // bad configuration value or unsupported option combination
  kPipeline,    // a processing stage could not produce a result
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what)
      : Error(ErrorKind::kFormat, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorKind::kValidation, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorKind::kConfig, what) {}
};

class PipelineError : public Error {
 public:
  explicit PipelineError(const std::string& what)
      : Error(ErrorKind::kPipeline, what) {}
};

}  // namespace glotwave

#endif  // GLOTWAVE_ERRORS_H_
