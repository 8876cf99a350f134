#pragma once

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "galstat/report/suites.hpp"

namespace galstat {

inline constexpr int kReportVersion = 1;

enum class Format { text, json };

struct Report {
  int version = kReportVersion;
  nlohmann::json config;
  std::vector<SuiteResult> suites;

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& s : suites) n += s.verdicts.size();
    return n;
  }
  std::size_t passed() const {
    std::size_t n = 0;
    for (const auto& s : suites) {
      for (const auto& v : s.verdicts) n += v.passed() ? 1 : 0;
    }
    return n;
  }
  bool all_passed() const { return passed() == total(); }
  /// 0 when every verdict passed, 1 otherwise.
  int exit_code() const { return all_passed() ? 0 : 1; }

  friend bool operator==(const Report&, const Report&) = default;
};

inline Report make_report(const SuiteConfig& cfg, std::vector<SuiteResult> suites) {
  return {kReportVersion, config_echo(cfg), std::move(suites)};
}

inline nlohmann::json report_json(const Report& r, bool with_timings = true) {
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& s : r.suites) {
    for (const auto& v : s.verdicts) {
      nlohmann::json j = v;
      j["suite"] = s.suite;
      if (!with_timings) j.erase("seconds");
      verdicts.push_back(std::move(j));
    }
  }
  return {{"version", r.version},
          {"config", r.config},
          {"verdicts", verdicts},
          {"summary", {{"passed", r.passed()}, {"total", r.total()}}}};
}

/// Inverse of the JSON form; missing timings read as zero.
inline Report parse_report(const nlohmann::json& j) {
  Report r;
  r.version = j.at("version").get<int>();
  if (r.version != kReportVersion) throw InputError("unsupported report version " + std::to_string(r.version));
  r.config = j.at("config");
  for (const auto& item : j.at("verdicts")) {
    nlohmann::json copy = item;
    if (!copy.contains("seconds")) copy["seconds"] = 0.0;
    const std::string suite = copy.at("suite").get<std::string>();
    if (r.suites.empty() || r.suites.back().suite != suite) r.suites.push_back({suite, {}});
    r.suites.back().verdicts.push_back(copy.get<Verdict>());
  }
  return r;
}

inline std::string emit_report(const Report& r, Format format, bool with_timings = true) {
  if (format == Format::json) return report_json(r, with_timings).dump(2) + "\n";
  std::ostringstream os;
  for (const auto& s : r.suites) {
    os << "[" << s.suite << "]\n";
    for (const auto& v : s.verdicts) {
      os << "  " << std::left << std::setw(6) << to_string(v.status) << " " << v.label;
      if (v.residual) os << "  residual=" << std::setprecision(3) << *v.residual;
      if (with_timings) os << "  (" << std::fixed << std::setprecision(2) << v.seconds << " s)" << std::defaultfloat;
      os << "\n";
      if (!v.witness.is_null()) os << "      witness: " << v.witness.dump() << "\n";
    }
  }
  os << r.passed() << "/" << r.total() << " verdicts passed\n";
  return os.str();
}

}  // namespace galstat
