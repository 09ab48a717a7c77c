#pragma once

#include <cstdio>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace c3bound::cli {

// One self-describing result: a schema tag plus ordered key/value payload.
// Serializing and re-parsing reproduces the record field for field (doubles
// round-trip bitwise through the shortest-representation dump).
struct OutputRecord {
  using Value = std::variant<double, long long, std::string>;

  std::string schema;
  std::vector<std::pair<std::string, Value>> payload;

  void add(const std::string& key, double v) { payload.emplace_back(key, v); }
  void add(const std::string& key, long long v) { payload.emplace_back(key, v); }
  void add(const std::string& key, int v) {
    payload.emplace_back(key, static_cast<long long>(v));
  }
  void add(const std::string& key, const std::string& v) {
    payload.emplace_back(key, v);
  }

  bool operator==(const OutputRecord&) const = default;

  std::string to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = schema;
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [k, v] : payload) {
      std::visit([&](const auto& x) { p[k] = x; }, v);
    }
    j["payload"] = std::move(p);
    return j.dump();
  }

  std::string to_text() const {
    std::string out;
    for (const auto& [k, v] : payload) {
      out += k;
      out += ' ';
      if (std::holds_alternative<double>(v)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(v));
        out += buf;
      } else if (std::holds_alternative<long long>(v)) {
        out += std::to_string(std::get<long long>(v));
      } else {
        out += std::get<std::string>(v);
      }
      out += '\n';
    }
    return out;
  }

  static OutputRecord from_json(const std::string& text) {
    const auto j = nlohmann::ordered_json::parse(text);
    OutputRecord r;
    r.schema = j.at("schema").get<std::string>();
    for (const auto& [k, v] : j.at("payload").items()) {
      if (v.is_number_float())
        r.add(k, v.get<double>());
      else if (v.is_number_integer() || v.is_number_unsigned())
        r.add(k, v.get<long long>());
      else
        r.add(k, v.get<std::string>());
    }
    return r;
  }
};

}  // namespace c3bound::cli
