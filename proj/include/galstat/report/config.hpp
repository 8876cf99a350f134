#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "galstat/errors.hpp"
#include "galstat/exact/complex_literal.hpp"
#include "galstat/field_kinematics.hpp"

namespace galstat {

/// Configuration problem with the offending line (0 when not tied to one) and field.
class ConfigError : public InputError {
 public:
  ConfigError(int line, std::string field, const std::string& what)
      : InputError(format(line, field, what)), line_(line), field_(std::move(field)) {}

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  static std::string format(int line, const std::string& field, const std::string& what) {
    std::string where = line > 0 ? "line " + std::to_string(line) : "config";
    if (!field.empty()) where += " [" + field + "]";
    return where + ": " + what;
  }

  int line_;
  std::string field_;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"counterexample", "cocycle", "algebra",
                                                 "reps",           "schwinger", "nogo"};
  return names;
}

/// Resolves "all" and rejects unknown names; keeps first occurrence order.
inline std::vector<std::string> expand_suites(const std::vector<std::string>& requested, int line = 0) {
  std::vector<std::string> out;
  auto push = [&](const std::string& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  for (const auto& name : requested) {
    if (name == "all") {
      for (const auto& s : suite_names()) push(s);
    } else if (std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end()) {
      push(name);
    } else {
      throw ConfigError(line, "run.suites", "unknown suite '" + name + "'");
    }
  }
  return out;
}

struct Tolerances {
  double anti_hermitian = 1e-12;
  double conjugation = 1e-10;
  double bch_relative = 1e-6;
};

struct SuiteConfig {
  LatticeSpec lattice;
  Rational mass = 1;
  int twice_spin = 0;
  std::string alpha_text = "1";
  std::string beta_text = "1";
  ExactComplex alpha = 1;
  ExactComplex beta = 1;
  bool confirm_3d = true;

  std::size_t cocycle_pairs = 1000;
  std::size_t cocycle_triples = 200;
  std::size_t nogo_samples = 50;
  std::size_t random_matrices = 1000;
  std::size_t lagrangian_samples = 100;

  std::uint64_t seed = 0;
  std::vector<std::string> suites;
  bool parallel = false;

  Tolerances tolerances;
  std::optional<std::filesystem::path> galilei_table;
  std::optional<std::filesystem::path> poincare_table;
  std::optional<std::filesystem::path> u_matrices;

  /// The field used by the bracket sweeps (spin zero).
  FieldSpec field() const {
    FieldSpec f;
    f.mass = mass;
    f.alpha = alpha;
    f.beta = beta;
    f.lattice = lattice;
    return f;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct ConfigReader {
  int line;
  std::string field;
  std::string value;

  ConfigError error(const std::string& what) const { return ConfigError(line, field, what); }

  long long integer(long long lo, long long hi) const {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(value, &used);
    } catch (const std::exception&) {
      throw error("expected an integer, got '" + value + "'");
    }
    if (used != value.size()) throw error("expected an integer, got '" + value + "'");
    if (v < lo || v > hi) throw error("value " + value + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }

  std::uint64_t unsigned64() const {
    if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw error("expected an unsigned integer, got '" + value + "'");
    }
    try {
      return std::stoull(value);
    } catch (const std::exception&) {
      throw error("seed out of range");
    }
  }

  Rational rational() const {
    try {
      return parse_rational(value);
    } catch (const InputError&) {
      throw error("expected a rational p/q, got '" + value + "'");
    }
  }

  ExactComplex complex() const {
    try {
      return parse_exact_complex(value);
    } catch (const InputError&) {
      throw error("expected a complex value such as 1/2+3/4i, got '" + value + "'");
    }
  }

  double real() const {
    try {
      std::size_t used = 0;
      double v = std::stod(value, &used);
      if (used == value.size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw error("expected a positive number, got '" + value + "'");
  }

  bool boolean() const {
    if (value == "true" || value == "yes" || value == "1") return true;
    if (value == "false" || value == "no" || value == "0") return false;
    throw error("expected true or false, got '" + value + "'");
  }

  /// Twice the spin from "0", "1/2", "1", "3/2", ...
  int twice_spin() const {
    Rational s = rational();
    Rational twice = 2 * s;
    if (s < 0 || boost::multiprecision::denominator(twice) != 1 || twice > 12) {
      throw error("spin must be one of 0, 1/2, ..., 6");
    }
    return boost::multiprecision::numerator(twice).convert_to<int>();
  }

  std::vector<std::string> list() const {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(value);
    while (std::getline(is, item, ',')) {
      item = trim(item);
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }
};

}  // namespace detail

/// Reads the sectioned key = value format. Relative table and matrix paths
/// resolve against `base_dir`.
inline SuiteConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {}) {
  SuiteConfig cfg;
  std::string section;
  std::map<std::string, int> seen;
  std::string raw;
  int line_no = 0;
  bool have_seed = false;
  std::optional<int> suites_line;
  while (std::getline(in, raw)) {
    ++line_no;
    for (char mark : {'#', ';'}) {
      if (auto pos = raw.find(mark); pos != std::string::npos) raw.erase(pos);
    }
    const std::string text = detail::trim(raw);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ConfigError(line_no, "", "unterminated section header");
      section = detail::trim(text.substr(1, text.size() - 2));
      static const std::vector<std::string> known = {"lattice", "field", "sampling", "run", "tolerances", "algebra", "schwinger"};
      if (std::find(known.begin(), known.end(), section) == known.end()) {
        throw ConfigError(line_no, section, "unknown section");
      }
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, section, "expected 'key = value'");
    if (section.empty()) throw ConfigError(line_no, "", "key outside of any section");
    detail::ConfigReader r{line_no, section + "." + detail::trim(text.substr(0, eq)), detail::trim(text.substr(eq + 1))};
    if (r.value.empty()) throw r.error("missing value");
    if (!seen.emplace(r.field, line_no).second) throw r.error("duplicate key");
    auto path = [&] { return base_dir / std::filesystem::path(r.value); };

    if (r.field == "lattice.dimension") {
      cfg.lattice.dimension = static_cast<int>(r.integer(1, 3));
    } else if (r.field == "lattice.points_per_side") {
      cfg.lattice.points_per_side = static_cast<int>(r.integer(2, 64));
      if (cfg.lattice.points_per_side % 2 != 0) throw r.error("points_per_side must be even");
    } else if (r.field == "lattice.side_length") {
      cfg.lattice.side_length = r.rational();
      if (cfg.lattice.side_length <= 0) throw r.error("side_length must be positive");
    } else if (r.field == "lattice.confirm_3d") {
      cfg.confirm_3d = r.boolean();
    } else if (r.field == "field.mass") {
      cfg.mass = r.rational();
    } else if (r.field == "field.spin") {
      cfg.twice_spin = r.twice_spin();
    } else if (r.field == "field.alpha") {
      cfg.alpha = r.complex();
      cfg.alpha_text = r.value;
    } else if (r.field == "field.beta") {
      cfg.beta = r.complex();
      cfg.beta_text = r.value;
    } else if (r.field == "sampling.cocycle_pairs") {
      cfg.cocycle_pairs = static_cast<std::size_t>(r.integer(1, 1000000));
    } else if (r.field == "sampling.cocycle_triples") {
      cfg.cocycle_triples = static_cast<std::size_t>(r.integer(1, 1000000));
    } else if (r.field == "sampling.nogo_samples") {
      cfg.nogo_samples = static_cast<std::size_t>(r.integer(1, 1000000));
    } else if (r.field == "sampling.random_matrices") {
      cfg.random_matrices = static_cast<std::size_t>(r.integer(1, 1000000));
    } else if (r.field == "sampling.lagrangian_samples") {
      cfg.lagrangian_samples = static_cast<std::size_t>(r.integer(1, 1000000));
    } else if (r.field == "run.seed") {
      cfg.seed = r.unsigned64();
      have_seed = true;
    } else if (r.field == "run.suites") {
      cfg.suites = r.list();
      suites_line = line_no;
    } else if (r.field == "run.parallel") {
      cfg.parallel = r.boolean();
    } else if (r.field == "tolerances.anti_hermitian") {
      cfg.tolerances.anti_hermitian = r.real();
    } else if (r.field == "tolerances.conjugation") {
      cfg.tolerances.conjugation = r.real();
    } else if (r.field == "tolerances.bch_relative") {
      cfg.tolerances.bch_relative = r.real();
    } else if (r.field == "algebra.galilei_table") {
      cfg.galilei_table = path();
    } else if (r.field == "algebra.poincare_table") {
      cfg.poincare_table = path();
    } else if (r.field == "schwinger.u_matrices") {
      cfg.u_matrices = path();
    } else {
      throw r.error("unknown key");
    }
  }
  if (!have_seed) throw ConfigError(0, "run.seed", "a seed is required");
  cfg.suites = expand_suites(cfg.suites, suites_line.value_or(0));
  if (cfg.alpha.is_zero() && cfg.beta.is_zero()) throw ConfigError(0, "field.alpha", "alpha and beta are both zero");
  return cfg;
}

inline SuiteConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {}) {
  std::istringstream is(text);
  return parse_config(is, base_dir);
}

inline SuiteConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(0, "", "cannot open config file '" + file.string() + "'");
  return parse_config(in, file.parent_path());
}

/// Normalized echo of every setting; paths are reported by file name only so
/// reports do not depend on the working directory.
inline nlohmann::json config_echo(const SuiteConfig& c) {
  auto file = [](const std::optional<std::filesystem::path>& p) {
    return p ? nlohmann::json(p->filename().string()) : nlohmann::json();
  };
  return {{"lattice",
           {{"dimension", c.lattice.dimension},
            {"points_per_side", c.lattice.points_per_side},
            {"side_length", to_string(c.lattice.side_length)},
            {"confirm_3d", c.confirm_3d}}},
          {"field",
           {{"mass", to_string(c.mass)},
            {"spin", to_string(Rational(c.twice_spin, 2))},
            {"alpha", c.alpha.to_string()},
            {"beta", c.beta.to_string()}}},
          {"sampling",
           {{"cocycle_pairs", c.cocycle_pairs},
            {"cocycle_triples", c.cocycle_triples},
            {"nogo_samples", c.nogo_samples},
            {"random_matrices", c.random_matrices},
            {"lagrangian_samples", c.lagrangian_samples}}},
          {"run", {{"seed", c.seed}, {"suites", c.suites}}},
          {"tolerances",
           {{"anti_hermitian", c.tolerances.anti_hermitian},
            {"conjugation", c.tolerances.conjugation},
            {"bch_relative", c.tolerances.bch_relative}}},
          {"algebra", {{"galilei_table", file(c.galilei_table)}, {"poincare_table", file(c.poincare_table)}}},
          {"schwinger", {{"u_matrices", file(c.u_matrices)}}}};
}

}  // namespace galstat
