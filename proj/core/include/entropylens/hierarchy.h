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

#ifndef ENTROPYLENS_HIERARCHY_H_
#define ENTROPYLENS_HIERARCHY_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace entropylens {

inline constexpr std::string_view kSuppressed = "*";

enum class HierarchyKind { kNumericBins, kTextPrefix, kDateGranularity, kMappingTable };

enum class DateUnit { kDay, kMonth, kQuarter, kYear, kDecade };

std::string_view HierarchyKindName(HierarchyKind kind);
std::string_view DateUnitName(DateUnit unit);
std::optional<DateUnit> ParseDateUnit(std::string_view name);

// Ordered coarsenings of one column's values. Level 0 is the identity, the
// configured levels follow, and the top level maps every value to "*".
// Each level is a coarsening of the previous one; the factories reject
// configurations that would break that (e.g. bin widths that do not nest).
//
// The missing value "" stays missing at every level below the top.
class GeneralizationHierarchy {
 public:
  // Bins anchored at zero; each width must be a positive integer multiple of
  // the previous one.
  static GeneralizationHierarchy NumericBins(std::vector<double> widths);
  // Keeps the first `length` code points and masks the rest with '*'.
  // Lengths must be strictly decreasing.
  static GeneralizationHierarchy TextPrefix(std::vector<std::size_t> lengths);
  // ISO dates (YYYY-MM-DD, or any coarser ISO prefix) truncated to a unit.
  // Units must be strictly coarser level over level.
  static GeneralizationHierarchy DateGranularity(std::vector<DateUnit> units);
  // Level k (k >= 1) maps raw values through tables[k - 1]. Every table must
  // cover the keys of the first one, and consecutive tables must nest.
  static GeneralizationHierarchy MappingTable(
      std::vector<std::map<std::string, std::string>> tables);

  HierarchyKind kind() const { return kind_; }
  std::size_t num_levels() const { return configured_levels() + 2; }
  std::size_t top_level() const { return num_levels() - 1; }

  // nullopt when `raw` does not fit the hierarchy's value kind.
  std::optional<std::string> Generalize(std::string_view raw,
                                        std::size_t level) const;

  const std::vector<double>& widths() const { return widths_; }
  const std::vector<std::size_t>& lengths() const { return lengths_; }
  const std::vector<DateUnit>& units() const { return units_; }
  const std::vector<std::map<std::string, std::string>>& tables() const {
    return tables_;
  }

  friend bool operator==(const GeneralizationHierarchy&,
                         const GeneralizationHierarchy&) = default;

 private:
  explicit GeneralizationHierarchy(HierarchyKind kind) : kind_(kind) {}
  std::size_t configured_levels() const;

  HierarchyKind kind_;
  std::vector<double> widths_;
  std::vector<std::size_t> lengths_;
  std::vector<DateUnit> units_;
  std::vector<std::map<std::string, std::string>> tables_;
};

}  // namespace entropylens

#endif  // ENTROPYLENS_HIERARCHY_H_
