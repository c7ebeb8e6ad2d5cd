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

#ifndef HADAMARD_TOOLS_CLI_APP_HPP_
#define HADAMARD_TOOLS_CLI_APP_HPP_

// The hadamard-sim command line, kept in a header so tests can drive it
// in-process through run().

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hadamard/circuit.hpp"
#include "hadamard/experiment.hpp"
#include "hadamard/io.hpp"
#include "hadamard/polarization.hpp"
#include "hadamard/reck.hpp"

#ifndef HADAMARD_VERSION
#define HADAMARD_VERSION "unknown"
#endif

namespace hadamard::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kConfig = 2, kNumerical = 3 };

namespace fs = std::filesystem;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::string config;
};

// A file to be written once every computation has succeeded.
struct PendingFile {
  std::string name;
  std::string contents;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fmt(double v, int precision = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v + 0.0);
  return buf;
}

// Writes `files` plus manifest.json into the output directory.
inline void commit_outputs(const GlobalOptions& g, const std::string& command, const nlohmann::json& config,
                           std::uint64_t seed, std::vector<PendingFile> files, nlohmann::json extra = {}) {
  const fs::path dir(g.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError(g.out, "cannot create output directory: " + ec.message());

  nlohmann::json manifest;
  manifest["command"] = command;
  manifest["version"] = HADAMARD_VERSION;
  manifest["seed"] = seed;
  manifest["config"] = config;
  nlohmann::json names = nlohmann::json::array();
  for (const auto& f : files) names.push_back(f.name);
  names.push_back("manifest.json");
  manifest["outputs"] = names;
  if (!extra.is_null()) manifest["parameters"] = extra;
  files.push_back({"manifest.json", manifest.dump(2) + "\n"});

  for (const auto& f : files) {
    std::ofstream os(dir / f.name, std::ios::binary | std::ios::trunc);
    os << f.contents;
    if (!os) throw ConfigError((dir / f.name).string(), "write failed");
  }
}

inline SweepConfig load_sweep_config(const GlobalOptions& g) {
  SweepConfig c = g.config.empty() ? SweepConfig{} : parse_sweep_config(read_file(g.config));
  if (g.seed) c.seed = *g.seed;
  c.validate();
  return c;
}

// ---- fringe-sweep -------------------------------------------------------------

inline int cmd_fringe_sweep(const GlobalOptions& g, std::ostream& out) {
  const SweepConfig c = load_sweep_config(g);
  const auto records = simulate_sweep(c);
  const auto fits = fit_all_pairs(records, c.accidental_rate);

  std::ostringstream fringes, fit;
  write_fringes_csv(fringes, records);
  write_fit_csv(fit, fits);

  out << "fringe-sweep: " << records.size() << " alpha points, seed " << c.seed << "\n";
  for (std::size_t k = 0; k < kPairCount; ++k) {
    out << "  pair " << pair_label(k) << "  visibility " << fmt(fits[k].visibility) << "  phase0 "
        << fmt(fits[k].phase0) << "\n";
  }
  out << "  mean live-pair visibility " << fmt(mean_live_visibility(fits)) << "\n";
  commit_outputs(g, "fringe-sweep", sweep_config_to_json(c), c.seed,
                 {{"fringes.csv", fringes.str()}, {"fit.csv", fit.str()}});
  return kOk;
}

// ---- singles-sweep ------------------------------------------------------------

inline int cmd_singles_sweep(const GlobalOptions& g, std::ostream& out) {
  const SweepConfig c = load_sweep_config(g);
  const auto records = simulate_sweep(c);

  std::ostringstream singles, report;
  write_singles_csv(singles, records);
  report << "input,detector,mean_counts,rse,amplitude_fraction,fraction_sigma\n";
  out << "singles-sweep: " << records.size() << " alpha points, seed " << c.seed << "\n";
  double rse_sum = 0.0;
  for (std::size_t s = 0; s < kSinglesInputs.size(); ++s) {
    for (std::size_t d = 0; d < kDetectors; ++d) {
      const auto pts = singles_series(records, s, d);
      std::vector<double> values;
      for (const auto& p : pts) values.push_back(p.value);
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      const double rse = relative_standard_error(values);
      const FitResult f = fit_fringe(pts);
      rse_sum += rse;
      report << kSinglesInputs[s] << ',' << d << ',' << format_g12(mean) << ',' << format_g12(rse) << ','
             << format_g12(f.amplitude_fraction) << ',' << format_g12(f.fraction_sigma) << '\n';
      out << "  input " << kSinglesInputs[s] << " detector " << d << "  mean " << fmt(mean) << "  RSE " << fmt(rse)
          << "  amplitude fraction " << fmt(f.amplitude_fraction) << " (sigma " << fmt(f.fraction_sigma) << ")\n";
    }
  }
  out << "  mean RSE " << fmt(rse_sum / (kSinglesInputs.size() * kDetectors)) << "\n";
  commit_outputs(g, "singles-sweep", sweep_config_to_json(c), c.seed,
                 {{"singles.csv", singles.str()}, {"rse.csv", report.str()}});
  return kOk;
}

// ---- rails --------------------------------------------------------------------

// arg of the bottom rail's off-diagonal entries relative to their α = 0 values.
inline std::pair<double, double> bottom_offdiag_phases(double alpha) {
  const auto prog = rail_preset(Rail::kBottom);
  const ComplexMatrix u = rail_composite(prog, alpha);
  const ComplexMatrix ref = rail_composite(prog, 0.0);
  return {wrap_angle(std::arg(u(0, 1) / ref(0, 1))) + 0.0, wrap_angle(std::arg(u(1, 0) / ref(1, 0))) + 0.0};
}

inline void print_rails(double alpha, std::ostream& out) {
  out << "alpha_rad " << fmt(alpha, 12) << "\n";
  for (Rail r : kAllRails) {
    const auto prog = rail_preset(r);
    const auto rep = geometric_phase_report(prog, rail_input(r), alpha);
    out << rail_name(r) << "\n";
    out << "  U =\n";
    std::istringstream rows(rail_composite(prog, alpha).to_string(6));
    for (std::string row; std::getline(rows, row);) out << "    " << row << "\n";
    out << "  pancharatnam " << fmt(rep.pancharatnam + 0.0, 9) << "  solid_angle " << fmt(rep.solid_angle, 9)
        << "  dynamical_residual " << fmt(rep.dynamical_residual, 3) << "  orthogonal_endpoints "
        << (rep.orthogonal_endpoints ? "yes" : "no") << "\n";
  }
  const auto [p01, p10] = bottom_offdiag_phases(alpha);
  out << "rail-bottom off-diagonal phases relative to alpha=0: (0,1) " << fmt(p01, 9) << "  (1,0) " << fmt(p10, 9)
      << "\n";
  const auto lune = lune_report(alpha);
  out << "lune R-P-L-H: solid_angle " << fmt(lune.solid_angle + 0.0, 9) << "  pancharatnam "
      << fmt(lune.pancharatnam + 0.0, 9) << "\n";
}

inline void print_rail_sweep(std::size_t points, std::ostream& out) {
  out << "alpha_rad,offdiag_phase_rad,delta_phase_rad,four_delta_alpha_rad,lune_solid_angle,lune_pancharatnam\n";
  const double step = (kPi / 4.0) / static_cast<double>(points);
  double prev = 0.0;
  for (std::size_t k = 0; k < points; ++k) {
    const double alpha = step * static_cast<double>(k);
    const double phase = bottom_offdiag_phases(alpha).second;
    const double delta = k == 0 ? 0.0 : wrap_angle(phase - prev) + 0.0;
    const auto lune = lune_report(alpha);
    out << format_g12(alpha) << ',' << format_g12(phase) << ',' << format_g12(delta) << ','
        << format_g12(k == 0 ? 0.0 : 4.0 * step) << ',' << format_g12(lune.solid_angle) << ','
        << format_g12(lune.pancharatnam) << '\n';
    prev = phase;
  }
}

inline int cmd_rails(const GlobalOptions& g, double alpha, std::size_t sweep, std::ostream& out) {
  if (!std::isfinite(alpha)) throw ConfigError("--alpha", "must be finite");
  std::ostringstream text;
  if (sweep > 0) {
    print_rail_sweep(sweep, text);
  } else {
    print_rails(alpha, text);
  }
  out << text.str();
  nlohmann::json params{{"alpha", alpha}, {"sweep", sweep}};
  commit_outputs(g, "rails", nlohmann::json::object(), g.seed.value_or(0), {{"rails.txt", text.str()}}, params);
  return kOk;
}

// ---- decompose ----------------------------------------------------------------

inline std::string describe(const CircuitElement& e) {
  if (const auto* bs = std::get_if<BeamSplitter>(&e)) {
    return "bs    a=" + std::to_string(bs->a) + " b=" + std::to_string(bs->b) + " r=" + fmt(bs->reflectivity, 12);
  }
  if (const auto* ph = std::get_if<PhaseShift>(&e)) {
    return "phase mode=" + std::to_string(ph->mode) + " phi=" + fmt(ph->phi, 12);
  }
  const auto& sw = std::get<Swap>(e);
  return "swap  a=" + std::to_string(sw.a) + " b=" + std::to_string(sw.b);
}

inline ComplexMatrix load_target(const std::string& path) {
  const std::string text = read_file(path);
  if (fs::path(path).extension() == ".json") return circuit_unitary(circuit_from_json(parse_json_text(text)));
  std::istringstream is(text);
  return read_matrix(is);
}

inline int cmd_decompose(const GlobalOptions& g, const std::string& path, std::optional<double> h4_theta,
                         const std::string& save_matrix, std::ostream& out, std::ostream& err) {
  ComplexMatrix u;
  if (h4_theta) {
    if (!path.empty()) throw ConfigError("--h4", "give either a matrix file or --h4, not both");
    u = h4(*h4_theta);
  } else {
    if (path.empty()) throw ConfigError("decompose", "a matrix file (or --h4 THETA) is required");
    u = load_target(path);
  }
  if (!is_unitary(u)) {
    err << "error: input matrix is not unitary (max |U^dagger U - I| = "
        << fmt(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows())), 3) << ")\n";
    return kConfig;
  }
  const MeshPlan plan = reck_decompose(u);
  const double error = max_abs_diff(recompose(plan), u);

  std::ostringstream text;
  text << "modes " << plan.modes << "\n";
  text << "beamsplitters " << plan.beamsplitter_count() << "\n";
  if (plan.elements.empty()) text << "plan: empty\n";
  for (const auto& e : plan.elements) text << describe(e) << "\n";
  text << "residual_phases";
  for (double p : plan.residual_phases) text << ' ' << fmt(p, 12);
  text << "\nround_trip_error " << fmt(error, 3) << "\n";
  out << text.str();

  std::vector<PendingFile> files{{"plan.txt", text.str()}};
  if (!save_matrix.empty()) {
    std::ostringstream m;
    write_matrix(m, u);
    files.push_back({save_matrix, m.str()});
  }
  nlohmann::json params{{"input", h4_theta ? "h4(" + fmt(*h4_theta, 17) + ")" : path}};
  commit_outputs(g, "decompose", nlohmann::json::object(), g.seed.value_or(0), std::move(files), params);
  return kOk;
}

// ---- entry point ----------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Linear-optics interference simulator: Hadamard network sweeps, rail geometric phases, "
               "Reck decomposition.",
               "hadamard-sim"};
  app.set_version_flag("--version", std::string(HADAMARD_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Override the RNG seed (u64)");
  app.add_option("--out", g.out, "Output directory (default: current directory)");
  app.add_option("--config", g.config, "Sweep config JSON (schema 1) or a previous manifest.json");

  auto* fringe = app.add_subcommand("fringe-sweep", "Two-photon coincidence sweep: fringes.csv, fit.csv");
  auto* singles = app.add_subcommand("singles-sweep", "Heralded single-photon sweep: singles.csv, rse.csv");

  auto* rails = app.add_subcommand("rails", "Rail unitaries and geometric-phase reports");
  double alpha = 0.0;
  std::size_t sweep = 0;
  rails->add_option("--alpha", alpha, "Half-wave plate angle alpha in radians");
  rails->add_option("--sweep", sweep, "Print an N-point alpha table over [0, pi/4) instead");

  auto* decompose = app.add_subcommand("decompose", "Reck decomposition of a unitary matrix file or circuit .json");
  std::string matrix_path, save_matrix;
  std::optional<double> h4_theta;
  decompose->add_option("matrix", matrix_path, "Matrix file (n, then n rows of re,im) or circuit .json");
  decompose->add_option("--h4", h4_theta, "Decompose h4(THETA) instead of reading a file");
  decompose->add_option("--save-matrix", save_matrix, "Also write the input matrix to this file in --out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (seed_opt->count() > 0) g.seed = seed;

  try {
    if (fringe->parsed()) return cmd_fringe_sweep(g, out);
    if (singles->parsed()) return cmd_singles_sweep(g, out);
    if (rails->parsed()) return cmd_rails(g, alpha, sweep, out);
    if (decompose->parsed()) return cmd_decompose(g, matrix_path, h4_theta, save_matrix, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const ShapeError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const DegenerateError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}

}  // namespace hadamard::cli

#endif  // HADAMARD_TOOLS_CLI_APP_HPP_
