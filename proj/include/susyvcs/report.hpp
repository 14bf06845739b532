#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "susyvcs/superpotential.hpp"

namespace susyvcs::report {

inline constexpr int kSchemaVersion = 1;

enum class Status { kPass, kFail, kFlagged };
std::string to_string(Status s);

/// One verified statement. anchor names the relation checked, or "plumbing".
struct Entry {
  std::string name;
  std::string anchor;
  Status status = Status::kPass;
  double metric = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct RunConfig {
  std::string command = "verify-all";
  std::string sequence = "oscillator";  // oscillator | landau
  int m = 1;
  int n = 40;
  std::optional<double> h;
  std::optional<double> x_max;
  double frame_tol = 1e-8;
  double moment_tol = 1e-10;
  double residual_tol = 1e-6;
  std::string output_dir = ".";
  std::uint64_t seed = 20240601;

  /// Throws std::invalid_argument on a violated invariant.
  void validate() const;
  nlohmann::ordered_json to_json() const;
  /// Overrides the fields present in a JSON object; unknown keys, wrong types
  /// and invalid values throw std::invalid_argument.
  void merge_json(const std::string& text);
};

struct Report {
  std::string command;
  std::vector<Entry> entries;
  nlohmann::ordered_json config;
  nlohmann::ordered_json result;  // subcommand payload, omitted when null
  std::string csv;                // optional sidecar

  bool ok() const;  // no fail entries
  int count(Status s) const;
  /// Schema version, entries, environment stamp and config echo. The
  /// timestamp is the only field that depends on the wall clock.
  nlohmann::ordered_json to_json(bool with_timestamp = true) const;
};

nlohmann::ordered_json environment_stamp(bool with_timestamp);

/// {"label": s, "w1": [{"x": a, "y": b, "re": "p/q", "im": "p/q"}, ...], "w2": [...]}
/// with coefficients as rational strings or integers; "im" may be omitted.
weyl::SuperpotentialSpec superpotential_from_json(const std::string& text);

/// Exact operator relations for one superpotential.
std::vector<Entry> algebra_entries(const weyl::SuperpotentialSpec& spec);

/// The full suite over every module.
Report verify_all(const RunConfig& config);

Report run_algebra(const RunConfig& config, const weyl::SuperpotentialSpec& spec);
/// Lowest three radial levels for ell in {0, 1}; the CSV carries the radial
/// energies E (model inverse-x) and the SUSY eigenvalues eps = m^2/2 + E
/// (model inverse-x-susy, rel_err scaled by m^2/2).
Report run_spectrum(const RunConfig& config, int ell);
/// model is oscillator or landau.
Report run_vcs(const RunConfig& config, const std::string& model, std::complex<double> z);
/// Targets as a JSON array or an object with a "targets" array.
std::vector<double> targets_from_json(const std::string& text);
Report run_moments_fit(const RunConfig& config, const std::vector<double>& targets, double radius, int cells,
                       bool atom);
/// example is landau-ground (param m) or quartic (param k).
Report run_residuals(const RunConfig& config, const std::string& example, int param);

}  // namespace susyvcs::report
