#pragma once

#include <complex>
#include <gmpxx.h>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "susyvcs/vcs.hpp"

namespace susyvcs::landau {

enum class Halfline { kPositive, kNegative };

/// Sector of the kappa/x superpotential with p_y quantum number m and strip label j.
struct LandauSector {
  int m = 1;
  int j = 0;
  int kappa = -1;
  Halfline halfline = Halfline::kPositive;
};

/// -1/2 d^2/dx^2 + coulomb/|x| + centrifugal/x^2 on nodes x_i = sign * i h,
/// i = 1..n, Dirichlet at x = 0 and at |x| = (n+1) h.
struct RadialProblem {
  int ell = 0;
  int m = 1;
  double coulomb = 0.0;      // kappa m
  double centrifugal = 0.0;  // kappa (kappa -+ 1) / 2
  double offset = 0.0;       // m^2 / 2; eigenvalue eps = offset + E
  double h = 0.0;
  double x_max = 0.0;
  Halfline halfline = Halfline::kPositive;

  int nodes() const;
  double node(int i) const;  // i = 1..nodes()
  double potential(double x) const;
  // Diagonal and off-diagonal of the finite-difference matrix.
  std::pair<std::vector<double>, std::vector<double>> tridiagonal() const;
  bool operator==(const RadialProblem& o) const = default;
};

/// h = min(5e-4 max(1, 1/m), 1/(200 m)), x_max = 60/m.
std::pair<double, double> default_grid(int m);

struct SeparatedProblems {
  RadialProblem fermionic;  // from H^f = A A^dag, ell = 1
  RadialProblem bosonic;    // from H^b = A^dag A, ell = 0
};

/// Throws std::invalid_argument for m < 1 or kappa != -1.
SeparatedProblems separate(const LandauSector& sector);
SeparatedProblems separate(const LandauSector& sector, double h, double x_max);

struct RadialSolution {
  std::vector<double> energies;  // E, ascending
  Eigen::MatrixXd vectors;       // columns on the nodes, unit 2-norm
  std::optional<std::string> warning;
};

/// k lowest eigenpairs of the tridiagonal discretization. Throws
/// std::invalid_argument when h > 1/(200 m) or x_max < 60/m, and
/// std::runtime_error if the eigensolver fails.
RadialSolution solve_radial(const RadialProblem& problem, int k);

/// -m^2 / (2 (n + ell + 1)^2).
double hydrogen_energy(int m, int ell, int n);

enum class Sector { kBosonic, kFermionic };
/// m^2/2 [1 - 1/(n+1)^2] (bosonic) or m^2/2 [1 - 1/(n+2)^2] (fermionic), exact.
mpq_class closed_spectrum(int m, int n, Sector which);

/// P(x) exp(Q(x)) with real polynomial coefficients, lowest degree first.
struct PolyExp {
  std::vector<double> p;
  std::vector<double> q;

  PolyExp derivative() const;
  double operator()(double x) const;
};

struct GroundStateResidual {
  double a_residual = 0.0;  // |A Psi| / |Psi|
  double h_residual = 0.0;  // |H^b Psi| / |Psi|
};

/// Psi = |x| e^(-s m |x|) chi_jm on |x| in [r_lo, r_hi] on the sector's
/// halfline, y in [2 j pi, 2 (j+1) pi]; s = exponent_scale (1 is the true state).
/// Throws std::invalid_argument unless 0 < r_lo < r_hi.
GroundStateResidual ground_state_residual(const LandauSector& sector, double r_lo, double r_hi, int nx = 400,
                                          int ny = 64, double exponent_scale = 1.0);

struct LandauNormalization {
  int m = 1;
  double u = 0.0;
  double series = 0.0;
  double closed_form = 0.0;
  double printed = 0.0;  // 4u/(1-u) - (u^2/4) log(1-u) - 3 as printed
  double series_vs_closed = 0.0;    // relative
  double printed_discrepancy = 0.0;  // |printed - series|
};

/// Closed form 3 + 4u/(1-u) + 4/u + (4/u^2) log(1-u), with a power series for u < 1e-3.
double landau_normalization_closed(double u);
double landau_normalization_printed(double u);
/// u = 2|z|^2/m^2; throws vcs::DomainError unless 0 <= u < 1.
LandauNormalization landau_normalization(int m, double u);

vcs::VcsFamily landau_vcs_family(int m, int n, bool extended = false);

struct Window {
  double x0, x1, y0, y1;
  int nx = 200;
  int ny = 100;
};

/// max over the window of |h^b psi_0| / |psi_0| for psi_0 = e^(-k x + i k y - c x^3);
/// c = 1/6 is the true ground state.
double quartic_ground_residual(int k, const Window& window, double cubic = 1.0 / 6.0);

struct SpectrumRow {
  std::string model;
  int m = 1;
  int ell = 0;
  int n = 0;
  double e_numeric = 0.0;
  double e_closed = 0.0;
  double rel_err = 0.0;
};

std::vector<SpectrumRow> spectrum_rows(int m, int k);
void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRow>& rows);

struct ResidualRow {
  std::string example;
  int k_or_m = 0;
  std::string window;
  double residual = 0.0;
};

void write_residual_csv(std::ostream& os, const std::vector<ResidualRow>& rows);

}  // namespace susyvcs::landau
