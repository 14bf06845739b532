#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "susyvcs/energy_sequence.hpp"

namespace susyvcs::moments {

struct Atom {
  double r = 0.0;
  double w = 0.0;
};

enum class DensityKind { kNone, kGaussianRadial, kLinearRadial, kTable };

/// Radial density on (0, R): c e^(-r^2) r, c r, or piecewise-linear table values
/// on increasing grid nodes (zero outside the table).
struct Density {
  DensityKind kind = DensityKind::kNone;
  double c = 0.0;
  std::vector<double> grid;
  std::vector<double> values;

  double operator()(double r) const;
};

class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// dlambda = sum_i w_i delta(r - r_i) + density(r) dr on (0, R]; R may be +inf.
class RadialMeasure {
 public:
  // Throws std::invalid_argument on negative weights or density values, atoms
  // outside (0, R], or a table reaching past R.
  RadialMeasure(std::vector<Atom> atoms, Density density, double radius);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const Density& density() const { return density_; }
  double radius() const { return radius_; }
  bool bounded() const;

 private:
  std::vector<Atom> atoms_;
  Density density_;
  double radius_;
};

/// (1/pi) e^(-r^2) r on (0, inf).
RadialMeasure oscillator_measure();
/// Atom (m/sqrt2, 1/(4 pi)) plus r/(pi m^2) on (0, m/sqrt2).
RadialMeasure landau_measure(int m);

/// 2 pi [sum_i w_i r_i^(2n) + int_0^R r^(2n) density(r) dr]. Throws
/// DivergenceError when the integral does not exist.
double moment(const RadialMeasure& measure, int n);
/// log of moment(measure, n), safe where the moment overflows.
double log_moment(const RadialMeasure& measure, int n);

struct MomentRow {
  int n = 0;
  double computed = 0.0;
  double target = 0.0;
  double rel_err = 0.0;
  double log_computed = 0.0;
  double log_target = 0.0;
};

struct MomentReport {
  std::vector<MomentRow> rows;
  int max_n = 0;
  double tolerance = 0.0;
  bool pass = false;
  // First n whose relative error reaches the tolerance.
  std::optional<int> first_failure;
};

MomentReport verify_moments(const RadialMeasure& measure, const spectra::EnergySequence& seq, int n_max,
                            double tol);
void write_csv(std::ostream& os, const MomentReport& report);

/// Nodes r_k with widths dr_k of a radial quadrature grid on (0, R).
struct RadialGrid {
  std::vector<double> nodes;
  std::vector<double> widths;
  double radius = 0.0;
};

/// K equal cells on (0, R), nodes at the cell midpoints.
RadialGrid midpoint_grid(double radius, int cells);

struct NnlsResult {
  Eigen::VectorXd x;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// min |A x - b| subject to x >= 0 by the Lawson-Hanson active-set method.
/// Entering index: largest component of A^T (b - A x), lowest index on ties.
NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations = 0);

struct FitResult {
  // Discrete measure: one atom per grid node (weight w_k dr_k) plus the
  // optional boundary atom at R.
  RadialMeasure measure;
  std::vector<double> density_values;  // w_k
  double boundary_atom = 0.0;
  // |D (M w - t)| / |D t| with D = diag(1/t_n) over nonzero targets.
  double relative_residual = 0.0;
  double condition = 0.0;
  std::optional<std::string> warning;
  int iterations = 0;
};

/// Needs at least 2 targets and 8 grid nodes; throws std::invalid_argument otherwise.
FitResult fit_measure(const std::vector<double>& targets, const RadialGrid& grid, bool allow_boundary_atom);

std::string to_json(const RadialMeasure& measure);
RadialMeasure measure_from_json(const std::string& text);

}  // namespace susyvcs::moments
