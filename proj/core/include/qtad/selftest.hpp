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

#include <functional>
#include <string>

namespace qtad {

/// Runs the built-in invariant suite (state algebra, interference
/// calibration, locality, the no-attack pair table, throughput recurrence)
/// and reports one line per check through `report`. Returns the number of
/// failed checks.
int run_selftest(const std::function<void(const std::string&)>& report);

}  // namespace qtad
