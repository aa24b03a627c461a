// Copyright 2026 The EntropyLens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENTROPYLENS_TRANSFORMS_H_
#define ENTROPYLENS_TRANSFORMS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "entropylens/analysis.h"
#include "entropylens/dataset.h"
#include "entropylens/linkage.h"
#include "entropylens/strategy.h"

namespace entropylens {

// Named what-if transforms. Each maps a dataset to the dataset an architect
// would keep working on after applying one strategy.

struct GeneralizeTransform {
  std::string column;
  std::size_t level = 0;
};

// Strips every non-consented column.
struct MinimizeTransform {};

// Keeps the working table: Direct columns replaced by a random surrogate.
struct HideTransform {
  std::uint64_t seed = 0;
};

// Splits quasi columns into tables. Evaluated table by table; it cannot be
// committed since there is no single dataset to continue from.
struct SeparateTransform {};

struct LinkTransform {
  Dataset linked;
  LinkSpec spec;
};

using Transform = std::variant<GeneralizeTransform, MinimizeTransform, HideTransform,
                               SeparateTransform, LinkTransform>;

// "generalize", "minimize", "hide", "separate" or "link".
std::string_view TransformName(const Transform& transform);
std::vector<std::string> TransformNames();

bool IsCommittable(const Transform& transform);

// Throws NotCommittable for SeparateTransform, otherwise whatever the
// underlying strategy throws.
Dataset ApplyTransform(const Dataset& dataset, const Transform& transform,
                       const AnalysisConfig& config);

struct WhatIfResult {
  std::string transform;
  RiskProfile before;
  RiskProfile after;
};

// Profile before and after the transform. For separation, `after` is the
// worst case over the planned tables: lowest min_epsilon, highest at-risk
// fraction and every minimal risky set found in any of them.
WhatIfResult EvaluateWhatIf(const Dataset& dataset, const Transform& transform,
                            const AnalysisConfig& config);

// Risk profile of each table of a separation plan. Unseparable columns are
// profiled as single-column tables.
std::vector<RiskProfile> ProfileSeparation(const Dataset& dataset, const SeparationPlan& plan,
                                           const AnalysisConfig& config);

// JSON form {"<name>": {...}}. A link transform carries the linked table
// inline: {"link": {"csv": "...", "schema": {...}, "table", "local_key",
// "foreign_key", "import": [...]}}. Throws InvalidConfig.
Transform TransformFromJson(const nlohmann::json& json);

}  // namespace entropylens

#endif  // ENTROPYLENS_TRANSFORMS_H_
