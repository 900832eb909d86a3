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

#ifndef HOT_ALIGNMENT_IO_H_
#define HOT_ALIGNMENT_IO_H_

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "hot/pipeline.h"

namespace hot {

nlohmann::json RunConfigToJson(const RunConfig& config);
// Missing keys keep their defaults.
RunConfig RunConfigFromJson(const nlohmann::json& j);

// First line of an alignment file.
nlohmann::json AlignmentHeader(const AlignmentResult& result);
// Header without the wall-clock fields; equal for reruns with the same
// inputs and seed.
nlohmann::json HeaderMetadata(nlohmann::json header);

// Header line, then "j i_1 ... i_K score" for every block entry at or above
// the configured emit threshold, with global node ids.
void WriteAlignment(const AlignmentResult& result, std::ostream& out);
void write_alignment(const AlignmentResult& result, const std::string& path);

// Entries below the emit threshold come back as 0.
AlignmentResult ReadAlignment(std::istream& in, const std::string& source);
AlignmentResult load_alignment(const std::string& path);

// Header line of an alignment file, parsed.
nlohmann::json ReadAlignmentHeader(const std::string& path);

}  // namespace hot

#endif  // HOT_ALIGNMENT_IO_H_
