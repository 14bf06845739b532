#include "susyvcs/landau.hpp"

#include <lapacke.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "susyvcs/superpotential.hpp"

namespace susyvcs::landau {
namespace {

double sign_of(Halfline h) { return h == Halfline::kPositive ? 1.0 : -1.0; }

// Values of f, f', f'' at x.
std::array<double, 3> derivatives(const PolyExp& f, double x) {
  const PolyExp d1 = f.derivative();
  return {f(x), d1(x), d1.derivative()(x)};
}

double poly_eval(const std::vector<double>& c, double x) {
  double out = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) out = out * x + *it;
  return out;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
  std::vector<double> out;
  for (std::size_t k = 1; k < c.size(); ++k) out.push_back(k * c[k]);
  return out;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return out;
}

double trapezoid_weight(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }

}  // namespace

int RadialProblem::nodes() const {
  return static_cast<int>(std::floor(x_max / h + 1e-9)) - 1;
}

double RadialProblem::node(int i) const {
  return sign_of(halfline) * i * h;
}

double RadialProblem::potential(double x) const {
  return coulomb / std::abs(x) + centrifugal / (x * x);
}

std::pair<std::vector<double>, std::vector<double>> RadialProblem::tridiagonal() const {
  const int n = nodes();
  std::vector<double> d(n), e(std::max(n - 1, 0), -0.5 / (h * h));
  for (int i = 0; i < n; ++i) d[i] = 1.0 / (h * h) + potential(node(i + 1));
  return {d, e};
}

std::pair<double, double> default_grid(int m) {
  return {std::min(5e-4 * std::max(1.0, 1.0 / m), 1.0 / (200.0 * m)), 60.0 / m};
}

SeparatedProblems separate(const LandauSector& sector) {
  const auto [h, x_max] = default_grid(sector.m);
  return separate(sector, h, x_max);
}

SeparatedProblems separate(const LandauSector& sector, double h, double x_max) {
  if (sector.m < 1) throw std::invalid_argument("sector needs m >= 1");
  if (sector.kappa != -1) throw std::invalid_argument("only kappa = -1 separates into hydrogen-like problems");
  if (!(h > 0.0) || !(x_max > 2.0 * h)) throw std::invalid_argument("radial grid needs 0 < 2h < x_max");
  const double k = sector.kappa;
  RadialProblem base;
  base.m = sector.m;
  base.coulomb = k * sector.m;
  base.offset = 0.5 * sector.m * sector.m;
  base.h = h;
  base.x_max = x_max;
  base.halfline = sector.halfline;
  SeparatedProblems out{base, base};
  out.fermionic.ell = 1;
  out.fermionic.centrifugal = 0.5 * k * (k - 1.0);
  out.bosonic.ell = 0;
  out.bosonic.centrifugal = 0.5 * k * (k + 1.0);
  return out;
}

RadialSolution solve_radial(const RadialProblem& problem, int k) {
  if (problem.h > 1.0 / (200.0 * problem.m) * (1.0 + 1e-12))
    throw std::invalid_argument("radial grid too coarse: need h <= 1/(200 m)");
  if (problem.x_max < 60.0 / problem.m * (1.0 - 1e-12))
    throw std::invalid_argument("radial grid too short: need x_max >= 60/m");
  const int n = problem.nodes();
  if (k < 1 || k > n) throw std::invalid_argument("requested eigenpair count out of range");
  auto [d, e] = problem.tridiagonal();
  e.push_back(0.0);
  std::vector<double> w(n), z(static_cast<std::size_t>(n) * k);
  std::vector<lapack_int> ifail(n);
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevx(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0, 1, k,
                                         2.0 * LAPACKE_dlamch('S'), &found, w.data(), z.data(), n, ifail.data());
  if (info != 0 || found != k) throw std::runtime_error("tridiagonal eigensolver failed, info = " + std::to_string(info));
  RadialSolution out;
  out.energies.assign(w.begin(), w.begin() + k);
  out.vectors = Eigen::Map<Eigen::MatrixXd>(z.data(), n, k);
  const Eigen::VectorXd ground = out.vectors.col(0).cwiseAbs();
  const double half = 0.5 * ground.maxCoeff();
  if ((ground.array() > half).count() < 20)
    out.warning = "grid too coarse: fewer than 20 samples above half maximum in the lowest eigenvector";
  return out;
}

double hydrogen_energy(int m, int ell, int n) {
  const double d = n + ell + 1.0;
  return -static_cast<double>(m) * m / (2.0 * d * d);
}

mpq_class closed_spectrum(int m, int n, Sector which) {
  if (n < 0) throw std::invalid_argument("closed_spectrum needs n >= 0");
  const long d = which == Sector::kBosonic ? n + 1 : n + 2;
  mpq_class out = mpq_class(static_cast<long>(m) * m, 2) * (mpq_class(1) - mpq_class(1, d * d));
  out.canonicalize();
  return out;
}

PolyExp PolyExp::derivative() const {
  // (P e^Q)' = (P' + P Q') e^Q
  std::vector<double> p1 = poly_derivative(p);
  const std::vector<double> pq = poly_mul(p, poly_derivative(q));
  if (p1.size() < pq.size()) p1.resize(pq.size(), 0.0);
  for (std::size_t i = 0; i < pq.size(); ++i) p1[i] += pq[i];
  return {p1, q};
}

double PolyExp::operator()(double x) const {
  return poly_eval(p, x) * std::exp(poly_eval(q, x));
}

GroundStateResidual ground_state_residual(const LandauSector& sector, double r_lo, double r_hi, int nx, int ny,
                                          double exponent_scale) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo)) throw std::invalid_argument("window needs 0 < r_lo < r_hi");
  if (nx < 2 || ny < 2) throw std::invalid_argument("window needs at least 2 samples per axis");
  if (sector.m < 1) throw std::invalid_argument("sector needs m >= 1");
  const double s = sign_of(sector.halfline);
  const double m = sector.m;
  // |x| e^(-c m |x|) written on the halfline as P(x) e^(Q(x)).
  const PolyExp g{{0.0, s}, {0.0, -s * exponent_scale * m}};
  const std::complex<double> iy(0.0, -s * m);  // chi ~ exp(-i sign(x) m y)

  const weyl::OperatorBundle ops = weyl::build_operators(weyl::builtin::inverse_x(sector.kappa));
  const weyl::WeylElement& a = ops.e_dag;
  const weyl::WeylElement h_b = ops.e * ops.e_dag;

  const std::vector<double> xs = linspace(s * r_lo, s * r_hi, nx);
  const std::vector<double> ys = linspace(2.0 * M_PI * sector.j, 2.0 * M_PI * (sector.j + 1), ny);
  double norm_psi = 0.0, norm_a = 0.0, norm_h = 0.0;
  for (int i = 0; i < nx; ++i) {
    const auto gx = derivatives(g, xs[i]);
    for (int j = 0; j < ny; ++j) {
      const std::complex<double> chi = std::exp(iy * ys[j]) / std::sqrt(2.0 * M_PI);
      const weyl::DerivativeOracle psi = [&](int da, int db, double, double) {
        if (da > 2) throw std::logic_error("oracle holds derivatives up to order 2");
        return gx[da] * std::pow(iy, db) * chi;
      };
      const double w = trapezoid_weight(i, nx) * trapezoid_weight(j, ny);
      norm_psi += w * std::norm(gx[0] * chi);
      norm_a += w * std::norm(weyl::apply_at(a, psi, xs[i], ys[j]));
      norm_h += w * std::norm(weyl::apply_at(h_b, psi, xs[i], ys[j]));
    }
  }
  return {std::sqrt(norm_a / norm_psi), std::sqrt(norm_h / norm_psi)};
}

double landau_normalization_closed(double u) {
  if (u < 1e-3) {
    // 4 sum_n u^n (n+1)/(n+2) - 1
    double sum = 0.0, p = 1.0;
    for (int n = 0; n < 12; ++n, p *= u) sum += p * (n + 1.0) / (n + 2.0);
    return 4.0 * sum - 1.0;
  }
  return 3.0 + 4.0 * u / (1.0 - u) + 4.0 / u + 4.0 / (u * u) * std::log1p(-u);
}

double landau_normalization_printed(double u) {
  return 4.0 * u / (1.0 - u) - 0.25 * u * u * std::log1p(-u) - 3.0;
}

LandauNormalization landau_normalization(int m, double u) {
  if (m < 1) throw std::invalid_argument("landau_normalization needs m >= 1");
  if (!(u >= 0.0 && u < 1.0)) throw vcs::DomainError("u = 2|z|^2/m^2 must lie in [0, 1)");
  LandauNormalization out;
  out.m = m;
  out.u = u;
  out.series = vcs::normalization_series(spectra::EnergySequence::landau_bosonic(m), 0.5 * u * m * m);
  out.closed_form = landau_normalization_closed(u);
  out.printed = landau_normalization_printed(u);
  out.series_vs_closed = std::abs(out.series - out.closed_form) / std::abs(out.closed_form);
  out.printed_discrepancy = std::abs(out.printed - out.series);
  return out;
}

vcs::VcsFamily landau_vcs_family(int m, int n, bool extended) {
  return vcs::VcsFamily(fock::build_layout(spectra::EnergySequence::landau_bosonic(m), n, extended),
                        moments::landau_measure(m));
}

double quartic_ground_residual(int k, const Window& window, double cubic) {
  if (!(window.x1 > window.x0) || !(window.y1 > window.y0) || window.nx < 1 || window.ny < 1)
    throw std::invalid_argument("quartic window must be a nonempty rectangle");
  const PolyExp g{{1.0}, {0.0, -static_cast<double>(k), 0.0, -cubic}};
  const std::complex<double> iy(0.0, k);
  const weyl::WeylElement h_b = weyl::hamiltonians(weyl::builtin::quartic()).h_b;
  double worst = 0.0;
  for (double x : linspace(window.x0, window.x1, window.nx)) {
    const auto gx = derivatives(g, x);
    for (double y : linspace(window.y0, window.y1, window.ny)) {
      const std::complex<double> ey = std::exp(iy * y) / std::sqrt(2.0 * M_PI);
      const weyl::DerivativeOracle psi = [&](int da, int db, double, double) {
        if (da > 2) throw std::logic_error("oracle holds derivatives up to order 2");
        return gx[da] * std::pow(iy, db) * ey;
      };
      worst = std::max(worst, std::abs(weyl::apply_at(h_b, psi, x, y)) / std::abs(gx[0] * ey));
    }
  }
  return worst;
}

std::vector<SpectrumRow> spectrum_rows(int m, int k) {
  const SeparatedProblems p = separate(LandauSector{m, 0, -1, Halfline::kPositive});
  std::vector<SpectrumRow> out;
  for (const RadialProblem* prob : {&p.bosonic, &p.fermionic}) {
    const RadialSolution sol = solve_radial(*prob, k);
    for (int n = 0; n < k; ++n) {
      const double closed = hydrogen_energy(m, prob->ell, n);
      out.push_back({"inverse-x", m, prob->ell, n, sol.energies[n], closed,
                     std::abs(sol.energies[n] - closed) / std::abs(closed)});
    }
  }
  return out;
}

void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRow>& rows) {
  os << "model,m,ell,n,E_numeric,E_closed,rel_err\n";
  os.precision(15);
  for (const auto& r : rows)
    os << r.model << ',' << r.m << ',' << r.ell << ',' << r.n << ',' << r.e_numeric << ',' << r.e_closed << ','
       << r.rel_err << '\n';
}

void write_residual_csv(std::ostream& os, const std::vector<ResidualRow>& rows) {
  os << "example,k_or_m,window,residual\n";
  os.precision(6);
  for (const auto& r : rows) os << r.example << ',' << r.k_or_m << ",\"" << r.window << "\"," << r.residual << '\n';
}

}  // namespace susyvcs::landau
