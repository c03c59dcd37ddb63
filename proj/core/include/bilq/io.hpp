// Copyright 2026 The bilq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file
/// @brief Field and model serialization.  A field on disk is a pair of
/// files: `<stem>.json` (sidecar: format version, axes as (half_width,
/// points), axis roles, data file name) and `<stem>.f64` (raw little-endian
/// 64-bit float pairs re, im in row-major axis order).  Weight models
/// serialize as JSON documents listing their groups.  All readers throw
/// IoError with the offending path, UsageError on malformed content.

#ifndef BILQ_IO_HPP_
#define BILQ_IO_HPP_

#include <string>

#include "bilq/field.hpp"
#include "bilq/grid.hpp"
#include "bilq/timefreq.hpp"
#include "bilq/weights.hpp"

namespace bilq {

inline constexpr int kFieldFormatVersion = 1;

/// Writes `<stem>.json` and `<stem>.f64`.  Overwrites existing files.
void write_field(const SampledField& field, const std::string& stem);

/// Writes a phase-space field's base like write_field, additionally
/// recording the analysis window's content hash as `window_id` (16 hex
/// digits) in the sidecar.
void write_field(const PhaseSpaceField& field, const std::string& stem);

/// Reads a field from its sidecar path (either `<stem>` or `<stem>.json`).
SampledField read_field(const std::string& stem);

/// Writes a one-axis slice of |field| as CSV with header "axis,value,modulus":
/// the varying axis index, its coordinate, and the magnitude, with every
/// other axis held at its middle index (coordinate 0).
void write_csv_slice(const SampledField& field, int axis,
                     const std::string& path);

/// Serializes a weight model as a JSON document {"groups": [...]}.
std::string weight_model_to_json(const WeightModel& model);

/// Parses a weight model from JSON text (not a path).
WeightModel weight_model_from_json(const std::string& text);

/// Reads an entire file into a string; IoError on failure.
std::string read_text_file(const std::string& path);

/// Writes a string to a file atomically-enough for this project (temp name
/// then rename); IoError on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace bilq

#endif  // BILQ_IO_HPP_
