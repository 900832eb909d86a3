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

#include "hot/errors.h"

namespace hot {

FormatError::FormatError(const std::string& path, int line,
                         const std::string& m)
    : Error(ErrorKind::kFormat,
            path + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                ": " + m),
      line_(line) {}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation:
    case ErrorKind::kFormat:
      return 2;
    case ErrorKind::kCapacity:
      return 3;
    case ErrorKind::kNumerical:
      return 4;
    case ErrorKind::kIo:
      return 5;
    case ErrorKind::kConfiguration:
      return 6;
    case ErrorKind::kGeneration:
      return 7;
  }
  return 1;
}

}  // namespace hot
