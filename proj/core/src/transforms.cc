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

#include "entropylens/transforms.h"

#include <algorithm>

#include "entropylens/error.h"
#include "entropylens/linkage.h"
#include "entropylens/schema_config.h"

namespace entropylens {
namespace {

using nlohmann::json;

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

[[noreturn]] void InvalidTransform(const std::string& message) {
  throw Error(ErrorCode::kInvalidConfig, message);
}

std::uint64_t SeedOf(const json& body) {
  if (!body.contains("seed")) return 0;
  if (!body["seed"].is_number_unsigned()) InvalidTransform("seed must be a non-negative integer");
  return body["seed"].get<std::uint64_t>();
}

// Dataset in which only `keep` of the original quasi columns stay quasi.
Dataset RestrictQuasi(const Dataset& dataset, const ColumnSubset& keep) {
  Dataset out = dataset;
  for (std::size_t c : dataset.ColumnsOfClass(ColumnClass::kQuasi)) {
    if (keep.contains(c)) continue;
    ColumnMeta meta = dataset.column(c);
    meta.column_class = ColumnClass::kNonIdentifying;
    out = out.WithColumnMeta(c, std::move(meta));
  }
  return out;
}

}  // namespace

std::string_view TransformName(const Transform& transform) {
  return std::visit(Overloaded{
                        [](const GeneralizeTransform&) { return "generalize"; },
                        [](const MinimizeTransform&) { return "minimize"; },
                        [](const HideTransform&) { return "hide"; },
                        [](const SeparateTransform&) { return "separate"; },
                        [](const LinkTransform&) { return "link"; },
                    },
                    transform);
}

std::vector<std::string> TransformNames() {
  return {"generalize", "minimize", "hide", "separate", "link"};
}

bool IsCommittable(const Transform& transform) {
  return !std::holds_alternative<SeparateTransform>(transform);
}

Dataset ApplyTransform(const Dataset& dataset, const Transform& transform,
                       const AnalysisConfig& config) {
  return std::visit(
      Overloaded{
          [&](const GeneralizeTransform& t) {
            return ApplyGeneralization(dataset, dataset.ColumnIndex(t.column), t.level);
          },
          [&](const MinimizeTransform&) {
            return ApplyMinimization(dataset, PlanMinimization(dataset, config));
          },
          [&](const HideTransform& t) {
            return ApplyHiding(dataset, PlanHiding(dataset), t.seed).working;
          },
          [&](const SeparateTransform&) -> Dataset {
            throw Error(ErrorCode::kNotCommittable,
                        "separation yields several tables and cannot be applied in place");
          },
          [&](const LinkTransform& t) { return AttachLinkedTable(dataset, t.linked, t.spec); },
      },
      transform);
}

std::vector<RiskProfile> ProfileSeparation(const Dataset& dataset, const SeparationPlan& plan,
                                           const AnalysisConfig& config) {
  std::vector<ColumnSubset> tables = plan.groups;
  for (std::size_t c : plan.unseparable) tables.push_back(ColumnSubset{c});
  std::vector<RiskProfile> profiles;
  for (const auto& table : tables) profiles.push_back(ProfileRisk(RestrictQuasi(dataset, table), config));
  return profiles;
}

WhatIfResult EvaluateWhatIf(const Dataset& dataset, const Transform& transform,
                            const AnalysisConfig& config) {
  WhatIfResult result;
  result.transform = std::string(TransformName(transform));
  result.before = ProfileRisk(dataset, config);
  if (!std::holds_alternative<SeparateTransform>(transform)) {
    result.after = ProfileRisk(ApplyTransform(dataset, transform, config), config);
    return result;
  }

  const RiskReport report = Analyze(dataset, config);
  const SeparationPlan plan = PlanSeparation(report.minimal_risky, report.quasi_columns);
  RiskProfile worst;
  for (const auto& profile : ProfileSeparation(dataset, plan, config)) {
    worst.min_epsilon = std::min(worst.min_epsilon, profile.min_epsilon);
    worst.at_risk_fraction = std::max(worst.at_risk_fraction, profile.at_risk_fraction);
    for (const auto& names : profile.minimal_risky) {
      if (std::find(worst.minimal_risky.begin(), worst.minimal_risky.end(), names) ==
          worst.minimal_risky.end()) {
        worst.minimal_risky.push_back(names);
      }
    }
  }
  std::sort(worst.minimal_risky.begin(), worst.minimal_risky.end());
  result.after = std::move(worst);
  return result;
}

Transform TransformFromJson(const json& body) {
  if (!body.is_object()) InvalidTransform("transform must be a JSON object");
  std::vector<std::string> present;
  for (const auto& name : TransformNames()) {
    if (body.contains(name)) present.push_back(name);
  }
  if (present.size() != 1) {
    InvalidTransform("transform must name exactly one of generalize, minimize, hide, separate, link");
  }
  const std::string& name = present.front();
  const json& args = body[name];
  if (!args.is_object()) InvalidTransform("\"" + name + "\" arguments must be an object");

  if (name == "generalize") {
    GeneralizeTransform t;
    if (!args.contains("column") || !args["column"].is_string()) {
      InvalidTransform("generalize needs a string \"column\"");
    }
    if (!args.contains("level") || !args["level"].is_number_unsigned()) {
      InvalidTransform("generalize needs a non-negative integer \"level\"");
    }
    t.column = args["column"].get<std::string>();
    t.level = args["level"].get<std::size_t>();
    return t;
  }
  if (name == "minimize") return MinimizeTransform{};
  if (name == "hide") return HideTransform{SeedOf(args)};
  if (name == "separate") return SeparateTransform{};

  if (!args.contains("csv") || !args["csv"].is_string()) {
    InvalidTransform("link needs the linked table as a \"csv\" string");
  }
  if (!args.contains("schema")) InvalidTransform("link needs a \"schema\" for the linked table");
  const json& schema = args["schema"];
  const SchemaConfig config =
      ParseSchemaConfig(schema.is_string() ? schema.get<std::string>() : schema.dump());
  return LinkTransform{LoadDataset(args["csv"].get<std::string>(), config), ParseLinkSpec(args)};
}

}  // namespace entropylens
