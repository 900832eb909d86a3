// Copyright 2026 The HOT Authors
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

#ifndef HOT_ERRORS_H_
#define HOT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace hot {

enum class ErrorKind {
  kValidation,
  kFormat,
  kConfiguration,
  kCapacity,
  kNumerical,
  kGeneration,
  kIo,
};

// Base class for every error raised by the library. The kind drives the CLI
// exit code; context frames are prepended as "stage: message".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind), message_(message) {}

  ErrorKind kind() const { return kind_; }
  const char* what() const noexcept override { return message_.c_str(); }

  void AddContext(const std::string& stage) {
    message_ = stage + ": " + message_;
  }

 private:
  ErrorKind kind_;
  std::string message_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& m)
      : Error(ErrorKind::kValidation, m) {}
};

// Parse failure. Line numbers are 1-based; 0 means "not line specific".
class FormatError : public Error {
 public:
  FormatError(const std::string& path, int line, const std::string& m);
  int line() const { return line_; }

 private:
  int line_;
};

class ConfigurationError : public Error {
 public:
  explicit ConfigurationError(const std::string& m)
      : Error(ErrorKind::kConfiguration, m) {}
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& m)
      : Error(ErrorKind::kCapacity, m) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& m)
      : Error(ErrorKind::kNumerical, m) {}
};

class GenerationError : public Error {
 public:
  explicit GenerationError(const std::string& m)
      : Error(ErrorKind::kGeneration, m) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& m) : Error(ErrorKind::kIo, m) {}
};

// Process exit codes used by the command line tool.
int ExitCodeFor(ErrorKind kind);

}  // namespace hot

#endif  // HOT_ERRORS_H_
