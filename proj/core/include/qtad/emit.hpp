// Copyright 2026 The qtad Authors
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

#pragma once

#include <string>

#include "qtad/experiment.hpp"

namespace qtad {

// Result files are byte-stable: fixed field order, '\n' line endings, and
// floating point rendered with 12 significant digits. Two runs with the
// same configuration produce identical bytes.

/// %.12g rendering used for every floating-point field.
std::string format_double12(double value);

std::string verdict_name(Verdict verdict);
std::string abort_reason_name(AbortReason reason);

/// One JSON object per session, schema documented in the README.
void write_sessions_jsonl(const std::string& path, const ExperimentResult& result);

/// One row per sweep point with a header row.
void write_aggregate_csv(const std::string& path, const ExperimentResult& result);

/// Plot-ready cumulative detection probability per pair budget:
/// columns q, eta, pairs, detection_probability.
void write_curves_csv(const std::string& path, const ExperimentResult& result);

/// One JSON object per round of a single session's transcript.
void write_transcript_jsonl(const std::string& path, const Transcript& transcript);

/// The same transcript as CSV.
void write_transcript_csv(const std::string& path, const Transcript& transcript);

}  // namespace qtad
