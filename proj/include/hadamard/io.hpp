// Copyright 2026 The hadamard-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HADAMARD_IO_HPP_
#define HADAMARD_IO_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "hadamard/circuit.hpp"
#include "hadamard/complex_matrix.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/experiment.hpp"

namespace hadamard {

// Bad config or input file. `where` names the field, or "line N" for syntax
// errors, so the CLI can point at it.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

inline constexpr int kConfigSchema = 1;

inline std::string format_g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

// ---- CSV -------------------------------------------------------------------

inline void write_fringes_csv(std::ostream& os, const std::vector<CountRecord>& records) {
  os << "alpha_rad,theta_prime_rad,pair,counts,accidentals\n";
  for (const auto& r : records) {
    for (std::size_t k = 0; k < kPairCount; ++k) {
      os << format_g12(r.alpha) << ',' << format_g12(r.theta_prime) << ',' << pair_label(k) << ','
         << format_g12(r.pair_counts[k]) << ',' << format_g12(r.accidentals_estimate[k]) << '\n';
    }
  }
}

inline void write_singles_csv(std::ostream& os, const std::vector<CountRecord>& records) {
  os << "alpha_rad,input,detector,counts\n";
  for (const auto& r : records) {
    for (std::size_t s = 0; s < kSinglesInputs.size(); ++s) {
      for (std::size_t d = 0; d < kDetectors; ++d) {
        os << format_g12(r.alpha) << ',' << kSinglesInputs[s] << ',' << d << ','
           << format_g12(r.singles_counts[s][d]) << '\n';
      }
    }
  }
}

inline void write_fit_csv(std::ostream& os, const std::array<FitResult, kPairCount>& fits) {
  os << "pair,offset,amplitude,phase0_rad,visibility\n";
  for (std::size_t k = 0; k < kPairCount; ++k) {
    const auto& f = fits[k];
    os << pair_label(k) << ',' << format_g12(f.offset) << ',' << format_g12(f.amplitude) << ','
       << format_g12(f.phase0) << ',' << format_g12(f.visibility) << '\n';
  }
}

// ---- sweep config ------------------------------------------------------------

namespace detail {

inline double get_number(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
  return v;
}

inline double get_nonnegative(const nlohmann::json& j, const std::string& field) {
  const double v = get_number(j, field);
  if (v < 0.0) throw ConfigError(field, "must be >= 0");
  return v;
}

inline std::uint64_t get_u64(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw ConfigError(field, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

inline void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& known, const std::string& prefix) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) throw ConfigError(prefix + key, "unknown field");
  }
}

}  // namespace detail

/// Sweep config from a parsed JSON document (schema 1). Missing fields keep
/// the SweepConfig defaults; unknown fields are rejected. A run manifest is
/// accepted too, in which case its "config" member is read.
inline SweepConfig sweep_config_from_json(const nlohmann::json& doc) {
  using detail::get_nonnegative;
  using detail::get_number;
  if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
  if (doc.contains("command") && doc.contains("config")) return sweep_config_from_json(doc.at("config"));

  detail::reject_unknown(doc,
                         {"schema", "alpha", "alpha_grid", "pair_rate", "singles_rate", "efficiencies",
                          "accidental_rate", "indistinguishability", "seed", "efficiency_drift"},
                         "");
  if (!doc.contains("schema")) throw ConfigError("schema", "missing (expected 1)");
  if (!doc["schema"].is_number_integer() || doc["schema"].get<int>() != kConfigSchema) {
    throw ConfigError("schema", "unsupported schema version (expected 1)");
  }

  SweepConfig c;
  if (doc.contains("alpha") && doc.contains("alpha_grid")) {
    throw ConfigError("alpha_grid", "give either alpha or alpha_grid, not both");
  }
  if (doc.contains("alpha")) {
    const auto& a = doc["alpha"];
    if (!a.is_object()) throw ConfigError("alpha", "expected {start, stop, count}");
    detail::reject_unknown(a, {"start", "stop", "count"}, "alpha.");
    const double start = a.contains("start") ? get_number(a["start"], "alpha.start") : 0.0;
    const double stop = a.contains("stop") ? get_number(a["stop"], "alpha.stop") : 2.0 * kPi;
    if (!a.contains("count")) throw ConfigError("alpha.count", "missing");
    const std::uint64_t count = detail::get_u64(a["count"], "alpha.count");
    if (count == 0) throw ConfigError("alpha.count", "must be positive");
    if (count > 1000000) throw ConfigError("alpha.count", "too large (max 1000000)");
    c.alpha_grid = uniform_alpha_grid(count, start, stop);
  }
  if (doc.contains("alpha_grid")) {
    const auto& g = doc["alpha_grid"];
    if (!g.is_array() || g.empty()) throw ConfigError("alpha_grid", "expected a non-empty array");
    c.alpha_grid.clear();
    for (std::size_t k = 0; k < g.size(); ++k) {
      c.alpha_grid.push_back(get_number(g[k], "alpha_grid[" + std::to_string(k) + "]"));
    }
  }
  if (doc.contains("pair_rate")) c.pair_rate = get_nonnegative(doc["pair_rate"], "pair_rate");
  if (doc.contains("singles_rate")) c.singles_rate = get_nonnegative(doc["singles_rate"], "singles_rate");
  if (doc.contains("accidental_rate")) c.accidental_rate = get_nonnegative(doc["accidental_rate"], "accidental_rate");
  if (doc.contains("efficiencies")) {
    const auto& e = doc["efficiencies"];
    if (!e.is_array() || e.size() != kDetectors) throw ConfigError("efficiencies", "expected an array of 4 numbers");
    for (std::size_t d = 0; d < kDetectors; ++d) {
      const std::string field = "efficiencies[" + std::to_string(d) + "]";
      const double v = get_number(e[d], field);
      if (!(v > 0.0 && v <= 1.0)) throw ConfigError(field, "must lie in (0, 1]");
      c.efficiencies[d] = v;
    }
  }
  if (doc.contains("indistinguishability")) {
    const double x = get_number(doc["indistinguishability"], "indistinguishability");
    if (x < 0.0 || x > 1.0) throw ConfigError("indistinguishability", "must lie in [0, 1]");
    c.x = IndistinguishabilityModel{x};
  }
  if (doc.contains("seed")) c.seed = detail::get_u64(doc["seed"], "seed");
  if (doc.contains("efficiency_drift")) {
    const auto& d = doc["efficiency_drift"];
    if (!d.is_array() || d.size() != kDetectors) {
      throw ConfigError("efficiency_drift", "expected an array of 4 {depth, phase} objects");
    }
    for (std::size_t k = 0; k < kDetectors; ++k) {
      const std::string prefix = "efficiency_drift[" + std::to_string(k) + "].";
      if (!d[k].is_object()) throw ConfigError(prefix.substr(0, prefix.size() - 1), "expected an object");
      detail::reject_unknown(d[k], {"depth", "phase"}, prefix);
      if (d[k].contains("depth")) c.drift[k].depth = get_number(d[k]["depth"], prefix + "depth");
      if (d[k].contains("phase")) c.drift[k].phase = get_number(d[k]["phase"], prefix + "phase");
      if (!(std::abs(c.drift[k].depth) < 1.0)) throw ConfigError(prefix + "depth", "must lie in (-1, 1)");
    }
  }
  return c;
}

inline nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based; turn it into a line number for the diagnostic.
    std::size_t line = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) line += text[i] == '\n' ? 1 : 0;
    throw ConfigError("line " + std::to_string(line), "JSON syntax error");
  }
}

inline SweepConfig parse_sweep_config(const std::string& text) { return sweep_config_from_json(parse_json_text(text)); }

// Fully resolved config; reading it back yields the same SweepConfig.
inline nlohmann::json sweep_config_to_json(const SweepConfig& c) {
  nlohmann::json j;
  j["schema"] = kConfigSchema;
  j["alpha_grid"] = c.alpha_grid;
  j["pair_rate"] = c.pair_rate;
  j["singles_rate"] = c.singles_rate;
  j["efficiencies"] = c.efficiencies;
  j["accidental_rate"] = c.accidental_rate;
  j["indistinguishability"] = c.x.x;
  j["seed"] = c.seed;
  nlohmann::json drift = nlohmann::json::array();
  for (const auto& d : c.drift) drift.push_back({{"depth", d.depth}, {"phase", d.phase}});
  j["efficiency_drift"] = drift;
  return j;
}

// ---- circuits ----------------------------------------------------------------

/// {"modes": n, "elements": [{"type": "bs", "a", "b", "r"},
///  {"type": "phase", "mode", "phi"}, {"type": "swap", "a", "b"}]}
inline ModeCircuit circuit_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
  detail::reject_unknown(doc, {"modes", "elements"}, "");
  if (!doc.contains("modes")) throw ConfigError("modes", "missing");
  const std::uint64_t modes = detail::get_u64(doc["modes"], "modes");
  if (modes == 0) throw ConfigError("modes", "must be positive");
  ModeCircuit c(modes);
  if (!doc.contains("elements")) return c;
  const auto& els = doc["elements"];
  if (!els.is_array()) throw ConfigError("elements", "expected an array");
  for (std::size_t k = 0; k < els.size(); ++k) {
    const std::string prefix = "elements[" + std::to_string(k) + "].";
    const auto& e = els[k];
    if (!e.is_object() || !e.contains("type") || !e["type"].is_string()) {
      throw ConfigError(prefix + "type", "missing element type");
    }
    const std::string type = e["type"].get<std::string>();
    auto field = [&](const char* name) -> const nlohmann::json& {
      if (!e.contains(name)) throw ConfigError(prefix + name, "missing");
      return e[name];
    };
    try {
      if (type == "bs") {
        detail::reject_unknown(e, {"type", "a", "b", "r"}, prefix);
        c.beamsplitter(detail::get_u64(field("a"), prefix + "a"), detail::get_u64(field("b"), prefix + "b"),
                       detail::get_number(field("r"), prefix + "r"));
      } else if (type == "phase") {
        detail::reject_unknown(e, {"type", "mode", "phi"}, prefix);
        c.phase(detail::get_u64(field("mode"), prefix + "mode"), detail::get_number(field("phi"), prefix + "phi"));
      } else if (type == "swap") {
        detail::reject_unknown(e, {"type", "a", "b"}, prefix);
        c.swap(detail::get_u64(field("a"), prefix + "a"), detail::get_u64(field("b"), prefix + "b"));
      } else {
        throw ConfigError(prefix + "type", "unknown element type '" + type + "'");
      }
    } catch (const ShapeError& err) {
      throw ConfigError(prefix.substr(0, prefix.size() - 1), err.what());
    } catch (const DomainError& err) {
      throw ConfigError(prefix.substr(0, prefix.size() - 1), err.what());
    }
  }
  return c;
}

inline nlohmann::json circuit_to_json(const ModeCircuit& c) {
  nlohmann::json j;
  j["modes"] = c.modes();
  nlohmann::json els = nlohmann::json::array();
  for (const auto& e : c.elements()) {
    if (const auto* bs = std::get_if<BeamSplitter>(&e)) {
      els.push_back({{"type", "bs"}, {"a", bs->a}, {"b", bs->b}, {"r", bs->reflectivity}});
    } else if (const auto* ph = std::get_if<PhaseShift>(&e)) {
      els.push_back({{"type", "phase"}, {"mode", ph->mode}, {"phi", ph->phi}});
    } else if (const auto* sw = std::get_if<Swap>(&e)) {
      els.push_back({{"type", "swap"}, {"a", sw->a}, {"b", sw->b}});
    }
  }
  j["elements"] = els;
  return j;
}

// ---- matrix files ------------------------------------------------------------

/// First line n, then n lines of n whitespace-separated `re,im` pairs.
inline ComplexMatrix read_matrix(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw ConfigError("line 1", "empty matrix file");
  std::size_t n = 0;
  {
    std::istringstream ls(line);
    long long v = 0;
    std::string rest;
    if (!(ls >> v) || (ls >> rest) || v <= 0) throw ConfigError("line " + std::to_string(line_no), "expected a positive size n");
    if (v > 4096) throw ConfigError("line " + std::to_string(line_no), "matrix too large");
    n = static_cast<std::size_t>(v);
  }
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!next_line()) throw ConfigError("line " + std::to_string(line_no + 1), "expected " + std::to_string(n) + " rows");
    const std::string where = "line " + std::to_string(line_no);
    std::istringstream ls(line);
    std::string tok;
    std::size_t c = 0;
    while (ls >> tok) {
      if (c >= n) throw ConfigError(where, "too many entries");
      const auto comma = tok.find(',');
      if (comma == std::string::npos) throw ConfigError(where, "entry '" + tok + "' is not re,im");
      try {
        std::size_t used_re = 0, used_im = 0;
        const std::string re = tok.substr(0, comma), im = tok.substr(comma + 1);
        const double vr = std::stod(re, &used_re);
        const double vi = std::stod(im, &used_im);
        if (used_re != re.size() || used_im != im.size() || !std::isfinite(vr) || !std::isfinite(vi)) {
          throw std::invalid_argument("bad");
        }
        m(r, c) = Complex{vr, vi};
      } catch (const std::logic_error&) {
        throw ConfigError(where, "entry '" + tok + "' is not re,im");
      }
      ++c;
    }
    if (c != n) throw ConfigError(where, "expected " + std::to_string(n) + " entries, got " + std::to_string(c));
  }
  if (next_line()) throw ConfigError("line " + std::to_string(line_no), "trailing data after matrix");
  return m;
}

inline void write_matrix(std::ostream& os, const ComplexMatrix& m) {
  if (!m.is_square()) throw ShapeError("write_matrix: matrix must be square");
  char buf[64];
  os << m.rows() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", m(r, c).real(), m(r, c).imag());
      os << (c ? " " : "") << buf;
    }
    os << '\n';
  }
}

}  // namespace hadamard

#endif  // HADAMARD_IO_HPP_
