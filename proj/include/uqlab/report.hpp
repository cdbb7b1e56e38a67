#pragma once

// Uniform bound report and its JSON, table and CSV renderings.

#include <json.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace uqlab::report {

enum class Format { json, table, csv };

std::string_view to_string(Format f);
Format parse_format(std::string_view text);

using MetaValue = std::variant<std::string, double, std::int64_t, bool>;

struct NamedValue {
  std::string name;
  double value = 0.0;
};

struct BoundReport {
  std::string title;
  std::string lhs_name;
  double lhs_value = 0.0;
  std::vector<NamedValue> rhs;
  std::string verdict;
  std::vector<std::pair<std::string, MetaValue>> metadata;  // insertion order is output order

  BoundReport& meta(std::string key, MetaValue value) {
    metadata.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  BoundReport& bound(std::string name, double value) {
    rhs.push_back({std::move(name), value});
    return *this;
  }
};

/// Rounds to `digits` significant digits through the decimal representation.
double round_significant(double v, int digits = 15);

nlohmann::ordered_json to_json(const BoundReport& r);
/// Inverse of to_json; metadata keeps the document's key order.
BoundReport from_json(const nlohmann::ordered_json& j);

/// One report renders as a single JSON object; several as {"reports": [...]}.
void emit(const std::vector<BoundReport>& reports, Format format, std::ostream& out);

}  // namespace uqlab::report
