// Copyright 2026 The Authors.
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

#ifndef IVLAB_INSTANCE_IO_H_
#define IVLAB_INSTANCE_IO_H_

#include <string>

#include "ivlab/instance.h"
#include "json.hpp"

namespace ivlab {

// Instance files are JSON objects with the blocks agents, grid, distribution,
// valuation, feasibility and tie_break. Numbers may be JSON numbers (read as
// their shortest decimal form) or strings such as "1/3" or "0.25". Profiles
// inside the distribution and valuation blocks list signal values, not grid
// indices. Errors name the offending field.
Instance ParseInstance(const nlohmann::json& doc, const std::string& default_name);
Instance LoadInstance(const std::string& path);

nlohmann::json InstanceToJson(const Instance& instance);
void SaveInstance(const Instance& instance, const std::string& path);

// "1/3", "0.25", 2 or 0.5 -> exact rational.
Rational JsonRational(const nlohmann::json& value, const std::string& field);

}  // namespace ivlab

#endif  // IVLAB_INSTANCE_IO_H_
