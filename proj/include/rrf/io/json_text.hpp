#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rrf/core_model.hpp"

namespace rrf::io {

/// Fixed-precision number text: 17 significant digits round-trip every double.
inline std::string format_number(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteEntry, "cannot serialize a non-finite number");
  if (v == 0.0) return "0";  // drops the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

inline std::string format_array(const Vector& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_number(v(i));
  }
  return out + "]";
}

/// Insertion-ordered JSON object emitter with two-space indentation.
class JsonObject {
 public:
  JsonObject& raw(std::string key, std::string value) {
    fields_.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  JsonObject& number(std::string key, double v) { return raw(std::move(key), format_number(v)); }
  JsonObject& integer(std::string key, long long v) { return raw(std::move(key), std::to_string(v)); }
  JsonObject& boolean(std::string key, bool v) { return raw(std::move(key), v ? "true" : "false"); }
  JsonObject& string(std::string key, std::string_view v) { return raw(std::move(key), quote(v)); }
  JsonObject& array(std::string key, const Vector& v) { return raw(std::move(key), format_array(v)); }
  JsonObject& null(std::string key) { return raw(std::move(key), "null"); }
  JsonObject& object(std::string key, const JsonObject& v) {
    nested_.push_back(fields_.size());
    return raw(std::move(key), v.render());
  }

  std::string render(int depth = 0) const {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    std::string out = "{\n";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      std::string value = fields_[i].second;
      if (is_nested(i)) value = reindent(value, depth + 1);
      out += pad + quote(fields_[i].first) + ": " + value;
      out += (i + 1 < fields_.size()) ? ",\n" : "\n";
    }
    return out + close_pad + "}";
  }

 private:
  bool is_nested(std::size_t i) const {
    for (auto k : nested_)
      if (k == i) return true;
    return false;
  }
  static std::string reindent(const std::string& text, int depth) {
    std::string out;
    const std::string extra(static_cast<std::size_t>(2 * depth), ' ');
    for (char c : text) {
      out += c;
      if (c == '\n') out += extra;
    }
    return out;
  }

  std::vector<std::pair<std::string, std::string>> fields_;
  std::vector<std::size_t> nested_;
};

/// 64-bit FNV-1a digest, rendered as 16 hex digits.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rrf::io
