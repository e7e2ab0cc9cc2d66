// Copyright 2026 The qsector Authors
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

#pragma once

#include <iosfwd>

#include "config.hpp"

namespace qsector::cli {

// Each command writes its artifacts under config.output and returns the
// process exit code. Library errors propagate to the caller.
int run_sector_overlap(const ExperimentConfig& config, std::ostream& log);
int run_time_reversal_demo(const ExperimentConfig& config, std::ostream& log);
int run_evolve(const ExperimentConfig& config, std::ostream& log);
int run_master_eq(const ExperimentConfig& config, std::ostream& log);
int run_oracle_check(const ExperimentConfig& config, std::ostream& log);

}  // namespace qsector::cli
