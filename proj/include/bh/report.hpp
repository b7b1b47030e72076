#pragma once

// Verification reports: {command, params, checks:[{name,status,details}], artifacts}.

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bh/error.hpp"

namespace bh {

using Json = nlohmann::ordered_json;

struct Check {
  std::string name;
  bool pass = false;
  Json details = Json::object();

  bool operator==(const Check&) const = default;
};

struct Report {
  std::string command;
  Json params = Json::object();
  std::vector<Check> checks;
  Json artifacts = Json::object();

  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  Check& add(std::string name, bool pass, Json details = Json::object()) {
    checks.push_back({std::move(name), pass, std::move(details)});
    return checks.back();
  }

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["params"] = params;
    j["status"] = ok() ? "pass" : "fail";
    j["checks"] = Json::array();
    for (const auto& c : checks)
      j["checks"].push_back({{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"details", c.details}});
    j["artifacts"] = artifacts;
    return j;
  }

  static Report from_json(const Json& j) {
    try {
      Report r;
      r.command = j.at("command").get<std::string>();
      r.params = j.at("params");
      for (const auto& c : j.at("checks")) {
        const std::string st = c.at("status").get<std::string>();
        if (st != "pass" && st != "fail") throw Error(Errc::Parse, "bad check status '" + st + "'");
        r.checks.push_back({c.at("name").get<std::string>(), st == "pass", c.at("details")});
      }
      r.artifacts = j.at("artifacts");
      return r;
    } catch (const Json::exception& e) {
      throw Error(Errc::Parse, e.what());
    }
  }

  std::string emit_json() const { return to_json().dump(2) + "\n"; }
  static Report parse_json(const std::string& text) {
    try {
      return from_json(Json::parse(text));
    } catch (const Json::exception& e) {
      throw Error(Errc::Parse, e.what());
    }
  }

  bool operator==(const Report&) const = default;
};

namespace detail {

inline std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline bool is_int_matrix(const Json& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const auto& row : v) {
    if (!row.is_array() || row.size() != v.size()) return false;
    for (const auto& x : row)
      if (!x.is_number_integer()) return false;
  }
  return true;
}

inline std::size_t code_points(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char ch : s) n += (ch & 0xC0) != 0x80;
  return n;
}

/// Aligned integer table, with row labels when given.
inline void matrix_text(std::ostream& os, const Json& m, const Json& labels) {
  std::size_t width = 0;
  if (labels.is_array())
    for (const auto& l : labels) width = std::max(width, code_points(l.get<std::string>()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << "    ";
    if (labels.is_array() && i < labels.size()) {
      const std::string l = labels[i].get<std::string>();
      os << l << std::string(width - code_points(l) + 1, ' ');
    }
    for (const auto& x : m[i]) os << std::setw(3) << x.get<int>();
    os << "\n";
  }
}

inline void json_text(std::ostream& os, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) {
      if (x.is_structured() && !x.empty()) {
        os << pad << k << ":\n";
        json_text(os, x, indent + 2);
      } else {
        os << pad << k << ": " << scalar_text(x) << "\n";
      }
    }
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (x.is_object()) {
        os << pad << "-\n";
        json_text(os, x, indent + 2);
      } else {
        os << pad << "- " << scalar_text(x) << "\n";
      }
    }
  } else {
    os << pad << scalar_text(v) << "\n";
  }
}

}  // namespace detail

/// Plain-text rendering; Gram matrices print as aligned tables.
inline std::string emit_text(const Report& r) {
  std::ostringstream os;
  os << r.command << ": " << (r.ok() ? "PASS" : "FAIL") << "\n";
  if (!r.params.empty()) {
    os << "params:";
    for (const auto& [k, v] : r.params.items()) os << " " << k << "=" << detail::scalar_text(v);
    os << "\n";
  }
  for (const auto& c : r.checks) {
    os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
    if (!c.details.empty() && c.details.is_object()) {
      bool simple = true;
      for (const auto& [k, v] : c.details.items()) simple = simple && !v.is_structured();
      if (simple) {
        os << " (";
        bool first = true;
        for (const auto& [k, v] : c.details.items()) {
          os << (first ? "" : ", ") << k << "=" << detail::scalar_text(v);
          first = false;
        }
        os << ")\n";
        continue;
      }
      os << "\n";
      detail::json_text(os, c.details, 6);
      continue;
    }
    os << "\n";
  }
  if (!r.artifacts.empty()) {
    os << "artifacts:\n";
    for (const auto& [k, v] : r.artifacts.items()) {
      if (v.is_object() && v.contains("rows") && detail::is_int_matrix(v["rows"])) {
        os << "  " << k << ":\n";
        detail::matrix_text(os, v["rows"], v.contains("labels") ? v["labels"] : Json());
        continue;
      }
      if (v.is_structured()) {
        os << "  " << k << ":\n";
        detail::json_text(os, v, 4);
      } else {
        os << "  " << k << ": " << detail::scalar_text(v) << "\n";
      }
    }
  }
  return os.str();
}

}  // namespace bh
