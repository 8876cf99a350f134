#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>

#include "galstat/errors.hpp"

namespace galstat {

enum class Status { pass, fail, inconclusive_under_restriction };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::inconclusive_under_restriction: return "INCONCLUSIVE-UNDER-RESTRICTION";
  }
  return "FAIL";
}

inline Status parse_status(std::string_view text) {
  if (text == "PASS") return Status::pass;
  if (text == "FAIL") return Status::fail;
  if (text == "INCONCLUSIVE-UNDER-RESTRICTION") return Status::inconclusive_under_restriction;
  throw InputError("unknown verdict status '" + std::string(text) + "'");
}

/// Outcome of one check. A failing verdict always names a witness or a residual.
struct Verdict {
  std::string label;
  Status status = Status::pass;
  std::optional<double> residual;
  nlohmann::json witness;  // null when there is none
  nlohmann::json details = nlohmann::json::object();
  double seconds = 0.0;

  bool passed() const { return status == Status::pass; }

  static Verdict pass(std::string label, nlohmann::json details = nlohmann::json::object()) {
    Verdict v;
    v.label = std::move(label);
    v.details = std::move(details);
    return v;
  }

  static Verdict fail(std::string label, nlohmann::json witness, std::optional<double> residual = {},
                      nlohmann::json details = nlohmann::json::object()) {
    if (witness.is_null() && !residual) {
      throw ConsistencyFailure("a failing verdict needs a witness or a residual");
    }
    Verdict v;
    v.label = std::move(label);
    v.status = Status::fail;
    v.witness = std::move(witness);
    v.residual = residual;
    v.details = std::move(details);
    return v;
  }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline void to_json(nlohmann::json& j, const Verdict& v) {
  j = nlohmann::json{{"label", v.label},
                     {"status", std::string(to_string(v.status))},
                     {"residual", v.residual ? nlohmann::json(*v.residual) : nlohmann::json()},
                     {"witness", v.witness},
                     {"details", v.details},
                     {"seconds", v.seconds}};
}

inline void from_json(const nlohmann::json& j, Verdict& v) {
  v.label = j.at("label").get<std::string>();
  v.status = parse_status(j.at("status").get<std::string>());
  const auto& r = j.at("residual");
  v.residual = r.is_null() ? std::nullopt : std::optional<double>(r.get<double>());
  v.witness = j.at("witness");
  v.details = j.value("details", nlohmann::json::object());
  v.seconds = j.at("seconds").get<double>();
}

}  // namespace galstat
