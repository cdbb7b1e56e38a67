#include "uqlab/report.hpp"

#include "uqlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace uqlab::report {

std::string_view to_string(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::table: return "table";
    case Format::csv: return "csv";
  }
  return "?";
}

Format parse_format(std::string_view text) {
  for (Format f : {Format::json, Format::table, Format::csv}) {
    if (text == to_string(f)) return f;
  }
  throw DomainError("unknown output format '" + std::string(text) + "'");
}

double round_significant(double v, int digits) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

namespace {

nlohmann::ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_significant(v);
}

double number_from(const nlohmann::ordered_json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

std::string fmt6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string meta_text(const MetaValue& v, bool full_precision) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          if (!full_precision) return fmt6(x);
          char buf[48];
          std::snprintf(buf, sizeof buf, "%.15g", x);
          return buf;
        } else {
          return std::to_string(x);
        }
      },
      v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt15(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void emit_table(const BoundReport& r, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back(r.lhs_name, fmt6(r.lhs_value));
  for (const auto& b : r.rhs) rows.emplace_back(b.name, fmt6(b.value));
  std::size_t width = 7;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : r.metadata) width = std::max(width, k.size());

  auto line = [&](const std::string& key, const std::string& value) {
    out << "  " << key << std::string(width - key.size() + 2, ' ') << value << '\n';
  };
  out << r.title << '\n' << std::string(r.title.size(), '=') << '\n';
  line(rows[0].first, rows[0].second);
  if (!r.rhs.empty()) {
    out << "  bounds:\n";
    for (std::size_t i = 1; i < rows.size(); ++i) line(rows[i].first, rows[i].second);
  }
  line("verdict", r.verdict);
  if (!r.metadata.empty()) {
    out << "  metadata:\n";
    for (const auto& [k, v] : r.metadata) line(k, meta_text(v, false));
  }
}

}  // namespace

nlohmann::ordered_json to_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["title"] = r.title;
  j["lhs_name"] = r.lhs_name;
  j["lhs_value"] = number(r.lhs_value);
  auto rhs = nlohmann::ordered_json::array();
  for (const auto& b : r.rhs) {
    nlohmann::ordered_json e;
    e["name"] = b.name;
    e["value"] = number(b.value);
    rhs.push_back(std::move(e));
  }
  j["rhs"] = std::move(rhs);
  j["verdict"] = r.verdict;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.metadata) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, double>) meta[k] = number(x);
          else meta[k] = x;
        },
        v);
  }
  j["metadata"] = std::move(meta);
  return j;
}

BoundReport from_json(const nlohmann::ordered_json& j) {
  BoundReport r;
  r.title = j.at("title").get<std::string>();
  r.lhs_name = j.at("lhs_name").get<std::string>();
  r.lhs_value = number_from(j.at("lhs_value"));
  for (const auto& e : j.at("rhs")) r.rhs.push_back({e.at("name").get<std::string>(), number_from(e.at("value"))});
  r.verdict = j.at("verdict").get<std::string>();
  for (const auto& [k, v] : j.at("metadata").items()) {
    if (v.is_boolean()) r.metadata.emplace_back(k, v.get<bool>());
    else if (v.is_number_integer()) r.metadata.emplace_back(k, v.get<std::int64_t>());
    else if (v.is_number()) r.metadata.emplace_back(k, v.get<double>());
    else if (v.is_null()) r.metadata.emplace_back(k, std::numeric_limits<double>::quiet_NaN());
    else r.metadata.emplace_back(k, v.get<std::string>());
  }
  return r;
}

void emit(const std::vector<BoundReport>& reports, Format format, std::ostream& out) {
  switch (format) {
    case Format::json: {
      if (reports.size() == 1) {
        out << to_json(reports.front()).dump(2) << '\n';
      } else {
        nlohmann::ordered_json doc;
        doc["reports"] = nlohmann::ordered_json::array();
        for (const auto& r : reports) doc["reports"].push_back(to_json(r));
        out << doc.dump(2) << '\n';
      }
      break;
    }
    case Format::table:
      for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) out << '\n';
        emit_table(reports[i], out);
      }
      break;
    case Format::csv:
      out << "report,kind,name,value\n";
      for (const auto& r : reports) {
        const std::string t = csv_field(r.title);
        out << t << ",lhs," << csv_field(r.lhs_name) << ',' << fmt15(r.lhs_value) << '\n';
        for (const auto& b : r.rhs) out << t << ",rhs," << csv_field(b.name) << ',' << fmt15(b.value) << '\n';
        out << t << ",verdict,verdict," << csv_field(r.verdict) << '\n';
        for (const auto& [k, v] : r.metadata) out << t << ",meta," << csv_field(k) << ',' << csv_field(meta_text(v, true)) << '\n';
      }
      break;
  }
}

}  // namespace uqlab::report
