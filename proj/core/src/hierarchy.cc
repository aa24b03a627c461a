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

#include "entropylens/hierarchy.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "entropylens/error.h"

namespace entropylens {
namespace {

bool IsIntegral(double x) { return std::isfinite(x) && std::floor(x) == x; }

std::string FormatNumber(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::optional<double> ParseNumber(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string NumericBin(double value, double width) {
  const double lo = std::floor(value / width) * width;
  if (IsIntegral(width)) {
    return "[" + FormatNumber(lo) + "-" + FormatNumber(lo + width - 1) + "]";
  }
  return "[" + FormatNumber(lo) + "," + FormatNumber(lo + width) + ")";
}

bool IsContinuationByte(char c) { return (static_cast<unsigned char>(c) & 0xC0) == 0x80; }

std::string MaskedPrefix(std::string_view text, std::size_t keep) {
  std::string out;
  std::size_t points = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const bool starts_point = !IsContinuationByte(text[i]);
    if (starts_point) ++points;
    if (points <= keep) {
      out.push_back(text[i]);
    } else if (starts_point) {
      out.push_back('*');
    }
  }
  return out;
}

struct IsoDate {
  int year = 0;
  int month = 0;  // 0 when absent
  int day = 0;    // 0 when absent
};

std::optional<int> ParseDigits(std::string_view text, std::size_t count) {
  if (text.size() != count) return std::nullopt;
  int value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

std::optional<IsoDate> ParseIsoDate(std::string_view text) {
  IsoDate date;
  auto year = ParseDigits(text.substr(0, 4), 4);
  if (!year) return std::nullopt;
  date.year = *year;
  if (text.size() == 4) return date;
  if (text.size() < 7 || text[4] != '-') return std::nullopt;
  auto month = ParseDigits(text.substr(5, 2), 2);
  if (!month || *month < 1 || *month > 12) return std::nullopt;
  date.month = *month;
  if (text.size() == 7) return date;
  if (text.size() != 10 || text[7] != '-') return std::nullopt;
  auto day = ParseDigits(text.substr(8, 2), 2);
  if (!day || *day < 1 || *day > 31) return std::nullopt;
  date.day = *day;
  return date;
}

std::string Pad(int value, int width) {
  std::string s = std::to_string(value);
  if (static_cast<int>(s.size()) < width) s.insert(0, width - s.size(), '0');
  return s;
}

std::optional<std::string> TruncateDate(std::string_view text, DateUnit unit) {
  auto date = ParseIsoDate(text);
  if (!date) return std::nullopt;
  switch (unit) {
    case DateUnit::kDay:
      if (date->day == 0) return std::nullopt;
      return Pad(date->year, 4) + "-" + Pad(date->month, 2) + "-" + Pad(date->day, 2);
    case DateUnit::kMonth:
      if (date->month == 0) return std::nullopt;
      return Pad(date->year, 4) + "-" + Pad(date->month, 2);
    case DateUnit::kQuarter:
      if (date->month == 0) return std::nullopt;
      return Pad(date->year, 4) + "-Q" + std::to_string((date->month - 1) / 3 + 1);
    case DateUnit::kYear:
      return Pad(date->year, 4);
    case DateUnit::kDecade:
      return Pad(date->year / 10 * 10, 4) + "s";
  }
  return std::nullopt;
}

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidHierarchy, message);
}

}  // namespace

std::string_view HierarchyKindName(HierarchyKind kind) {
  switch (kind) {
    case HierarchyKind::kNumericBins: return "numeric_bins";
    case HierarchyKind::kTextPrefix: return "text_prefix";
    case HierarchyKind::kDateGranularity: return "date_granularity";
    case HierarchyKind::kMappingTable: return "mapping_table";
  }
  return "";
}

std::string_view DateUnitName(DateUnit unit) {
  switch (unit) {
    case DateUnit::kDay: return "day";
    case DateUnit::kMonth: return "month";
    case DateUnit::kQuarter: return "quarter";
    case DateUnit::kYear: return "year";
    case DateUnit::kDecade: return "decade";
  }
  return "";
}

std::optional<DateUnit> ParseDateUnit(std::string_view name) {
  for (DateUnit unit : {DateUnit::kDay, DateUnit::kMonth, DateUnit::kQuarter,
                        DateUnit::kYear, DateUnit::kDecade}) {
    if (DateUnitName(unit) == name) return unit;
  }
  return std::nullopt;
}

GeneralizationHierarchy GeneralizationHierarchy::NumericBins(std::vector<double> widths) {
  if (widths.empty()) Invalid("numeric_bins needs at least one width");
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (!(widths[i] > 0) || !std::isfinite(widths[i])) {
      Invalid("numeric_bins widths must be positive");
    }
    if (i > 0) {
      const double ratio = widths[i] / widths[i - 1];
      if (ratio < 1 || std::abs(ratio - std::round(ratio)) > 1e-9) {
        Invalid("numeric_bins width " + FormatNumber(widths[i]) +
                " is not a multiple of " + FormatNumber(widths[i - 1]));
      }
    }
  }
  GeneralizationHierarchy h(HierarchyKind::kNumericBins);
  h.widths_ = std::move(widths);
  return h;
}

GeneralizationHierarchy GeneralizationHierarchy::TextPrefix(std::vector<std::size_t> lengths) {
  if (lengths.empty()) Invalid("text_prefix needs at least one length");
  for (std::size_t i = 1; i < lengths.size(); ++i) {
    if (lengths[i] >= lengths[i - 1]) Invalid("text_prefix lengths must decrease");
  }
  GeneralizationHierarchy h(HierarchyKind::kTextPrefix);
  h.lengths_ = std::move(lengths);
  return h;
}

GeneralizationHierarchy GeneralizationHierarchy::DateGranularity(std::vector<DateUnit> units) {
  if (units.empty()) Invalid("date_granularity needs at least one unit");
  for (std::size_t i = 1; i < units.size(); ++i) {
    if (units[i] <= units[i - 1]) Invalid("date_granularity units must get coarser");
  }
  GeneralizationHierarchy h(HierarchyKind::kDateGranularity);
  h.units_ = std::move(units);
  return h;
}

GeneralizationHierarchy GeneralizationHierarchy::MappingTable(
    std::vector<std::map<std::string, std::string>> tables) {
  if (tables.empty()) Invalid("mapping_table needs at least one table");
  const auto& domain = tables.front();
  for (std::size_t k = 1; k < tables.size(); ++k) {
    std::map<std::string, std::string> image;  // level k-1 value -> level k value
    for (const auto& [raw, coarse] : domain) {
      auto it = tables[k].find(raw);
      if (it == tables[k].end()) {
        Invalid("mapping_table level " + std::to_string(k + 1) + " lacks value '" + raw + "'");
      }
      const std::string& finer = tables[k - 1].at(raw);
      auto [pos, inserted] = image.emplace(finer, it->second);
      if (!inserted && pos->second != it->second) {
        Invalid("mapping_table level " + std::to_string(k + 1) +
                " splits values grouped at the previous level");
      }
    }
  }
  GeneralizationHierarchy h(HierarchyKind::kMappingTable);
  h.tables_ = std::move(tables);
  return h;
}

std::size_t GeneralizationHierarchy::configured_levels() const {
  switch (kind_) {
    case HierarchyKind::kNumericBins: return widths_.size();
    case HierarchyKind::kTextPrefix: return lengths_.size();
    case HierarchyKind::kDateGranularity: return units_.size();
    case HierarchyKind::kMappingTable: return tables_.size();
  }
  return 0;
}

std::optional<std::string> GeneralizationHierarchy::Generalize(std::string_view raw,
                                                               std::size_t level) const {
  if (level >= num_levels()) return std::nullopt;
  if (level == 0) return std::string(raw);
  if (level == top_level()) return std::string(kSuppressed);
  if (raw.empty()) return std::string();
  switch (kind_) {
    case HierarchyKind::kNumericBins: {
      auto value = ParseNumber(raw);
      if (!value) return std::nullopt;
      return NumericBin(*value, widths_[level - 1]);
    }
    case HierarchyKind::kTextPrefix:
      return MaskedPrefix(raw, lengths_[level - 1]);
    case HierarchyKind::kDateGranularity:
      return TruncateDate(raw, units_[level - 1]);
    case HierarchyKind::kMappingTable: {
      const auto& table = tables_[level - 1];
      auto it = table.find(std::string(raw));
      if (it == table.end()) return std::nullopt;
      return it->second;
    }
  }
  return std::nullopt;
}

}  // namespace entropylens
