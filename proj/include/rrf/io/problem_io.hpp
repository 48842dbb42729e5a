#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "json.hpp"
#include "rrf/core_model.hpp"
#include "rrf/io/json_text.hpp"

namespace rrf::io {

/// A problem file: the nominal data plus an optional display name.
struct ProblemDocument {
  NominalProblem problem;
  std::optional<std::string> name;
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SchemaError, where + ": " + what);
}

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                                const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) schema_error(where, "unknown key \"" + item.key() + "\"");
  }
}

inline const json& require(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, "missing key \"" + key + "\"");
  return *it;
}

inline int require_int(const json& obj, const std::string& key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer()) schema_error(where + "." + key, "expected an integer");
  const auto value = v.get<long long>();
  if (value < 0 || value > 1'000'000) schema_error(where + "." + key, "integer out of range");
  return static_cast<int>(value);
}

inline double require_number(const json& v, const std::string& where) {
  if (!v.is_number()) schema_error(where, "expected a number");
  return v.get<double>();
}

inline ConeKind parse_cone(const json& cone, int m) {
  const std::string where = "cone";
  if (!cone.is_object()) schema_error(where, "expected an object");
  const json& kind_value = require(cone, "kind", where);
  if (!kind_value.is_string()) schema_error(where + ".kind", "expected a string");
  const std::string kind = kind_value.get<std::string>();
  if (kind == "nonneg") {
    reject_unknown_keys(cone, {"kind"}, where);
    return NonnegOrthant{m};
  }
  if (kind == "soc") {
    reject_unknown_keys(cone, {"kind"}, where);
    return SecondOrderCone{m};
  }
  if (kind == "psd") {
    reject_unknown_keys(cone, {"kind", "q"}, where);
    return PsdCone{require_int(cone, "q", where)};
  }
  if (kind == "svm_product") {
    reject_unknown_keys(cone, {"kind", "s", "m_svm"}, where);
    return ProductCone{require_int(cone, "s", where) + 1, require_int(cone, "m_svm", where)};
  }
  schema_error(where + ".kind", "unknown cone kind \"" + kind + "\"");
}

inline json cone_json_fields(const ConeKind& cone) {
  return std::visit(
      [](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, PsdCone>) return json::array({std::pair{"q", c.q}});
        else if constexpr (std::is_same_v<T, ProductCone>)
          return json::array({std::pair{"s", c.soc_dim - 1}, std::pair{"m_svm", c.orthant_dim}});
        else return json::array();
      },
      cone);
}

}  // namespace detail

/// Parses and validates a problem document. Unknown keys, wrong row lengths
/// and type mismatches raise SchemaError naming the offending key.
inline ProblemDocument parse_problem_document(std::string_view text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) detail::schema_error("document", "expected a JSON object");
  detail::reject_unknown_keys(doc, {"name", "n", "m", "cone", "A", "b"}, "document");

  ProblemDocument out;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) detail::schema_error("name", "expected a string");
    out.name = it->get<std::string>();
  }
  const int n = detail::require_int(doc, "n", "document");
  const int m = detail::require_int(doc, "m", "document");
  if (n < 1 || m < 1) detail::schema_error("document", "n and m must be >= 1");

  const json& a = detail::require(doc, "A", "document");
  if (!a.is_array()) detail::schema_error("A", "expected an array of rows");
  if (static_cast<int>(a.size()) != m) {
    detail::schema_error("A", "expected " + std::to_string(m) + " rows, got " + std::to_string(a.size()));
  }
  NominalProblem& p = out.problem;
  p.a_bar.resize(m, n);
  for (int i = 0; i < m; ++i) {
    const json& row = a[static_cast<std::size_t>(i)];
    const std::string where = "A[" + std::to_string(i) + "]";
    if (!row.is_array()) detail::schema_error(where, "expected an array");
    if (static_cast<int>(row.size()) != n) {
      detail::schema_error(where, "expected " + std::to_string(n) + " entries, got " + std::to_string(row.size()));
    }
    for (int j = 0; j < n; ++j) {
      p.a_bar(i, j) = detail::require_number(row[static_cast<std::size_t>(j)],
                                             where + "[" + std::to_string(j) + "]");
    }
  }
  const json& b = detail::require(doc, "b", "document");
  if (!b.is_array()) detail::schema_error("b", "expected an array");
  if (static_cast<int>(b.size()) != m) {
    detail::schema_error("b", "expected " + std::to_string(m) + " entries, got " + std::to_string(b.size()));
  }
  p.b_bar.resize(m);
  for (int i = 0; i < m; ++i) {
    p.b_bar(i) = detail::require_number(b[static_cast<std::size_t>(i)], "b[" + std::to_string(i) + "]");
  }
  p.cone = detail::parse_cone(detail::require(doc, "cone", "document"), m);
  out.problem = validate_problem(p);
  return out;
}

inline NominalProblem parse_problem(std::string_view text) { return parse_problem_document(text).problem; }

/// Canonical text: fixed key order, one matrix row per line, 17-digit numbers.
inline std::string serialize_problem(const NominalProblem& p, const std::optional<std::string>& name = {}) {
  validate_problem(p);
  std::string out = "{\n";
  if (name) out += "  \"name\": " + quote(*name) + ",\n";
  out += "  \"n\": " + std::to_string(p.n()) + ",\n";
  out += "  \"m\": " + std::to_string(p.m()) + ",\n";
  out += "  \"cone\": {\"kind\": " + quote(cone_name(p.cone));
  for (const auto& field : detail::cone_json_fields(p.cone)) {
    out += ", " + quote(field[0].get<std::string>()) + ": " + std::to_string(field[1].get<int>());
  }
  out += "},\n";
  out += "  \"A\": [\n";
  for (int i = 0; i < p.m(); ++i) {
    out += "    " + format_array(p.a_bar.row(i).transpose());
    out += (i + 1 < p.m()) ? ",\n" : "\n";
  }
  out += "  ],\n";
  out += "  \"b\": " + format_array(p.b_bar) + "\n";
  out += "}\n";
  return out;
}

inline std::string serialize_problem(const ProblemDocument& doc) {
  return serialize_problem(doc.problem, doc.name);
}

}  // namespace rrf::io
