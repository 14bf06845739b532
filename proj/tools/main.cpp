#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "susyvcs/report.hpp"

namespace {

using susyvcs::report::Report;
using susyvcs::report::RunConfig;

constexpr int kUsageError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Parses "a,b" into two numbers.
std::pair<double, double> parse_pair(const std::string& text, const std::string& what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument(what + " must be of the form A,B");
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    const double x = std::stod(a, &used_a), y = std::stod(b, &used_b);
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(what);
    return {x, y};
  } catch (const std::logic_error&) {
    throw std::invalid_argument(what + " must be of the form A,B");
  }
}

void write_outputs(const Report& r, const RunConfig& c) {
  std::filesystem::create_directories(c.output_dir);
  const std::filesystem::path dir(c.output_dir);
  std::ofstream(dir / (r.command + "-report.json")) << r.to_json().dump(2) << '\n';
  if (!r.csv.empty()) std::ofstream(dir / (r.command + ".csv")) << r.csv;
  if (!r.csv.empty())
    std::cout << r.csv;
  else
    std::cout << r.to_json().dump(2) << '\n';
  std::cerr << r.command << ": " << r.count(susyvcs::report::Status::kPass) << " pass, "
            << r.count(susyvcs::report::Status::kFail) << " fail, "
            << r.count(susyvcs::report::Status::kFlagged) << " flagged\n";
  for (const auto& e : r.entries)
    if (e.status == susyvcs::report::Status::kFail) std::cerr << "FAIL " << e.name << ": " << e.note << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector coherent states and supersymmetric partner models"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  if (const char* dir = std::getenv("SUSYVCS_OUTPUT_DIR")) config.output_dir = dir;
  std::string config_file;
  double h = 0.0, x_max = 0.0;
  app.add_option("--config", config_file, "JSON config; its keys override flags")->check(CLI::ExistingFile);
  app.add_option("--output-dir", config.output_dir, "Directory for the report and CSV sidecars");
  app.add_option("--sequence", config.sequence, "oscillator or landau")->check(CLI::IsMember({"oscillator", "landau"}));
  app.add_option("--m", config.m, "Landau parameter m");
  app.add_option("--N", config.n, "Truncation level");
  auto* h_opt = app.add_option("--h", h, "Radial grid step");
  auto* x_opt = app.add_option("--xmax", x_max, "Radial grid extent");
  app.add_option("--frame-tol", config.frame_tol);
  app.add_option("--moment-tol", config.moment_tol);
  app.add_option("--residual-tol", config.residual_tol);
  app.add_option("--seed", config.seed, "Seed for the randomized checks");

  auto* verify = app.add_subcommand("verify-all", "Run the full verification suite");

  auto* algebra = app.add_subcommand("algebra", "Exact operator relations for a superpotential");
  std::string superpotential_file;
  algebra->add_option("--superpotential", superpotential_file, "JSON superpotential")
      ->required()
      ->check(CLI::ExistingFile);

  auto* spectrum = app.add_subcommand("spectrum", "Radial spectra of the inverse-x model");
  int ell = 0;
  spectrum->add_option("--ell", ell, "0 (bosonic) or 1 (fermionic)")->required()->check(CLI::IsMember({0, 1}));

  auto* vcs_cmd = app.add_subcommand("vcs", "Evaluate a coherent state");
  std::string model, z_text;
  vcs_cmd->add_option("--model", model)->required()->check(CLI::IsMember({"oscillator", "landau"}));
  vcs_cmd->add_option("--z", z_text, "RE,IM")->required();

  auto* moments_cmd = app.add_subcommand("moments", "Fit a radial measure to moment targets");
  bool fit = false, atom = false;
  std::string targets_file, grid_text;
  moments_cmd->add_flag("--fit", fit)->required();
  moments_cmd->add_option("--targets", targets_file)->required()->check(CLI::ExistingFile);
  moments_cmd->add_option("--grid", grid_text, "R,K")->required();
  moments_cmd->add_flag("--atom", atom, "Allow a boundary atom at R");

  auto* residuals = app.add_subcommand("residuals", "Ground-state residuals");
  std::string example;
  int param = 1;
  residuals->add_option("--example", example)->required()->check(CLI::IsMember({"landau-ground", "quartic"}));
  residuals->add_option("--param", param, "m for landau-ground, k for quartic")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  Report report;
  try {
    if (*h_opt) config.h = h;
    if (*x_opt) config.x_max = x_max;
    config.command = app.get_subcommands().front()->get_name();
    if (!config_file.empty()) config.merge_json(read_file(config_file));
    if (config.command != app.get_subcommands().front()->get_name())
      throw std::invalid_argument("config command " + config.command + " does not match the subcommand");
    config.validate();

    if (*verify) {
      report = susyvcs::report::verify_all(config);
    } else if (*algebra) {
      report = susyvcs::report::run_algebra(config,
                                            susyvcs::report::superpotential_from_json(read_file(superpotential_file)));
    } else if (*spectrum) {
      report = susyvcs::report::run_spectrum(config, ell);
    } else if (*vcs_cmd) {
      const auto [re, im] = parse_pair(z_text, "--z");
      report = susyvcs::report::run_vcs(config, model, {re, im});
    } else if (*moments_cmd) {
      const auto [radius, cells] = parse_pair(grid_text, "--grid");
      if (!(radius > 0.0) || cells != static_cast<int>(cells) || cells < 1)
        throw std::invalid_argument("--grid needs R > 0 and an integer K >= 1");
      report = susyvcs::report::run_moments_fit(config, susyvcs::report::targets_from_json(read_file(targets_file)),
                                                radius, static_cast<int>(cells), atom);
    } else if (*residuals) {
      report = susyvcs::report::run_residuals(config, example, param);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    write_outputs(report, config);
  } catch (const std::exception& e) {
    std::cerr << "cannot write outputs: " << e.what() << '\n';
    return 1;
  }
  return report.ok() ? 0 : 1;
}
