#include "susyvcs/moments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>

#include "json.hpp"

namespace susyvcs::moments {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * M_PI;

// Composite Simpson with panel doubling until the relative change is < 1e-12.
double adaptive_integral(const std::function<double(double)>& f, double a, double b) {
  if (!(b > a)) return 0.0;
  auto simpson = [&](std::size_t panels) {
    const double h = (b - a) / static_cast<double>(panels);
    double sum = f(a) + f(b);
    for (std::size_t k = 1; k < panels; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(a + h * k);
    return sum * h / 3.0;
  };
  std::size_t panels = 16;
  double prev = simpson(panels);
  constexpr std::size_t kCap = std::size_t(1) << 20;
  while (panels < kCap) {
    panels *= 2;
    const double next = simpson(panels);
    if (std::abs(next - prev) <= 1e-12 * std::abs(next)) return next;
    prev = next;
  }
  return prev;
}

double log_sum_exp(const std::vector<double>& logs) {
  if (logs.empty()) return -kInf;
  const double top = *std::max_element(logs.begin(), logs.end());
  if (!std::isfinite(top)) return top;
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - top);
  return top + std::log(acc);
}

// int_0^R (r/scale)^(2n) density(r) dr with scale = the top of the density's support.
// Returns {integral, scale}; closed forms are handled by the callers.
std::pair<double, double> scaled_density_integral(const Density& d, double radius, int n) {
  switch (d.kind) {
    case DensityKind::kGaussianRadial: {
      const double s = radius;
      auto f = [&](double r) { return std::pow(r / s, 2 * n) * d.c * std::exp(-r * r) * r; };
      return {adaptive_integral(f, 0.0, radius), s};
    }
    case DensityKind::kTable: {
      const double s = d.grid.back();
      double sum = 0.0;
      for (std::size_t k = 0; k + 1 < d.grid.size(); ++k) {
        auto f = [&](double r) { return std::pow(r / s, 2 * n) * d(r); };
        sum += adaptive_integral(f, d.grid[k], d.grid[k + 1]);
      }
      return {sum, s};
    }
    default:
      return {0.0, 1.0};
  }
}

// log of int r^(2n) density, or nullopt for a zero density.
std::optional<double> log_density_moment(const Density& d, double radius, int n) {
  if (d.kind == DensityKind::kNone || (d.c == 0.0 && d.kind != DensityKind::kTable)) return std::nullopt;
  if (d.kind == DensityKind::kLinearRadial) {
    if (!std::isfinite(radius)) throw DivergenceError("linear radial density has no moments on an unbounded support");
    return std::log(d.c) + (2.0 * n + 2.0) * std::log(radius) - std::log(2.0 * n + 2.0);
  }
  if (d.kind == DensityKind::kGaussianRadial && !std::isfinite(radius))
    return std::log(d.c) + std::lgamma(n + 1.0) - std::log(2.0);
  const auto [integral, scale] = scaled_density_integral(d, radius, n);
  if (integral <= 0.0) return std::nullopt;
  return std::log(integral) + 2.0 * n * std::log(scale);
}

double density_moment(const Density& d, double radius, int n) {
  if (d.kind == DensityKind::kNone) return 0.0;
  if (d.kind == DensityKind::kLinearRadial) {
    if (!std::isfinite(radius)) throw DivergenceError("linear radial density has no moments on an unbounded support");
    return d.c * std::pow(radius, 2 * n + 2) / (2.0 * n + 2.0);
  }
  if (d.kind == DensityKind::kGaussianRadial && !std::isfinite(radius)) return d.c * std::tgamma(n + 1.0) / 2.0;
  const auto [integral, scale] = scaled_density_integral(d, radius, n);
  return integral * std::pow(scale, 2 * n);
}

}  // namespace

double Density::operator()(double r) const {
  switch (kind) {
    case DensityKind::kNone:
      return 0.0;
    case DensityKind::kGaussianRadial:
      return c * std::exp(-r * r) * r;
    case DensityKind::kLinearRadial:
      return c * r;
    case DensityKind::kTable: {
      if (r < grid.front() || r > grid.back()) return 0.0;
      auto it = std::upper_bound(grid.begin(), grid.end(), r);
      if (it == grid.end()) return values.back();
      const std::size_t k = static_cast<std::size_t>(it - grid.begin()) - 1;
      const double t = (r - grid[k]) / (grid[k + 1] - grid[k]);
      return (1.0 - t) * values[k] + t * values[k + 1];
    }
  }
  return 0.0;
}

RadialMeasure::RadialMeasure(std::vector<Atom> atoms, Density density, double radius)
    : atoms_(std::move(atoms)), density_(std::move(density)), radius_(radius) {
  if (!(radius_ > 0.0)) throw std::invalid_argument("support radius must be positive");
  for (const Atom& a : atoms_) {
    if (!(a.w >= 0.0) || !std::isfinite(a.w)) throw std::invalid_argument("atom weights must be finite and >= 0");
    if (!(a.r > 0.0) || a.r > radius_) throw std::invalid_argument("atoms must lie in (0, R]");
  }
  if (!(density_.c >= 0.0)) throw std::invalid_argument("density coefficient must be >= 0");
  if (density_.kind == DensityKind::kTable) {
    const auto& g = density_.grid;
    if (g.size() < 2 || g.size() != density_.values.size())
      throw std::invalid_argument("density table needs matching grid and values with at least 2 nodes");
    if (g.front() < 0.0 || g.back() > radius_) throw std::invalid_argument("density table must lie in [0, R]");
    for (std::size_t k = 0; k + 1 < g.size(); ++k)
      if (!(g[k] < g[k + 1])) throw std::invalid_argument("density grid must be increasing");
    for (double v : density_.values)
      if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("density values must be finite and >= 0");
  }
}

bool RadialMeasure::bounded() const {
  return std::isfinite(radius_);
}

RadialMeasure oscillator_measure() {
  return RadialMeasure({}, Density{DensityKind::kGaussianRadial, 1.0 / M_PI, {}, {}}, kInf);
}

RadialMeasure landau_measure(int m) {
  if (m < 1) throw std::invalid_argument("landau_measure needs m >= 1");
  const double edge = m / std::sqrt(2.0);
  return RadialMeasure({{edge, 1.0 / (4.0 * M_PI)}},
                       Density{DensityKind::kLinearRadial, 1.0 / (M_PI * m * m), {}, {}}, edge);
}

double moment(const RadialMeasure& measure, int n) {
  if (n < 0) throw std::invalid_argument("moment order must be >= 0");
  double sum = density_moment(measure.density(), measure.radius(), n);
  for (const Atom& a : measure.atoms()) sum += a.w * std::pow(a.r, 2 * n);
  return kTwoPi * sum;
}

double log_moment(const RadialMeasure& measure, int n) {
  if (n < 0) throw std::invalid_argument("moment order must be >= 0");
  std::vector<double> logs;
  if (auto d = log_density_moment(measure.density(), measure.radius(), n)) logs.push_back(*d);
  for (const Atom& a : measure.atoms())
    if (a.w > 0.0) logs.push_back(std::log(a.w) + 2.0 * n * std::log(a.r));
  return std::log(kTwoPi) + log_sum_exp(logs);
}

MomentReport verify_moments(const RadialMeasure& measure, const spectra::EnergySequence& seq, int n_max,
                            double tol) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  MomentReport out;
  out.max_n = n_max;
  out.tolerance = tol;
  for (int n = 0; n <= n_max; ++n) {
    MomentRow row;
    row.n = n;
    row.computed = moment(measure, n);
    row.target = seq.factorial(static_cast<std::size_t>(n));
    row.log_computed = log_moment(measure, n);
    row.log_target = seq.log_factorial(static_cast<std::size_t>(n));
    if (std::isfinite(row.computed) && std::isfinite(row.target) && row.target > 0.0)
      row.rel_err = std::abs(row.computed - row.target) / row.target;
    else
      row.rel_err = std::abs(std::expm1(row.log_computed - row.log_target));
    if (!(row.rel_err < tol) && !out.first_failure) out.first_failure = n;
    out.rows.push_back(row);
  }
  out.pass = !out.first_failure.has_value();
  return out;
}

void write_csv(std::ostream& os, const MomentReport& report) {
  os << "n,computed,target,rel_err\n";
  os.precision(17);
  for (const MomentRow& r : report.rows) os << r.n << ',' << r.computed << ',' << r.target << ',' << r.rel_err << '\n';
}

RadialGrid midpoint_grid(double radius, int cells) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("grid radius must be finite and positive");
  if (cells < 1) throw std::invalid_argument("grid needs at least one cell");
  RadialGrid g;
  g.radius = radius;
  const double h = radius / cells;
  for (int k = 0; k < cells; ++k) {
    g.nodes.push_back((k + 0.5) * h);
    g.widths.push_back(h);
  }
  return g;
}

NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations) {
  const Eigen::Index cols = a.cols();
  if (a.rows() != b.size()) throw std::invalid_argument("nnls: dimension mismatch");
  if (max_iterations <= 0) max_iterations = static_cast<int>(3 * cols) + 10;
  const double tol = 10.0 * std::numeric_limits<double>::epsilon() * a.cwiseAbs().colwise().sum().maxCoeff() *
                     static_cast<double>(std::max(a.rows(), cols));

  NnlsResult out;
  out.x = Eigen::VectorXd::Zero(cols);
  std::vector<bool> passive(cols, false);
  auto solve_passive = [&]() {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < cols; ++j)
      if (passive[j]) idx.push_back(j);
    Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
    const Eigen::VectorXd s_sub = sub.colPivHouseholderQr().solve(b);
    Eigen::VectorXd s = Eigen::VectorXd::Zero(cols);
    for (std::size_t k = 0; k < idx.size(); ++k) s(idx[k]) = s_sub(static_cast<Eigen::Index>(k));
    return s;
  };

  Eigen::VectorXd w = a.transpose() * (b - a * out.x);
  while (out.iterations < max_iterations) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < cols; ++j)
      if (!passive[j] && w(j) > tol && (enter < 0 || w(j) > w(enter))) enter = j;
    if (enter < 0) {
      out.converged = true;
      break;
    }
    ++out.iterations;
    passive[enter] = true;
    Eigen::VectorXd s = solve_passive();
    for (int inner = 0; inner <= cols; ++inner) {
      double alpha = kInf;
      for (Eigen::Index j = 0; j < cols; ++j)
        if (passive[j] && s(j) <= 0.0) alpha = std::min(alpha, out.x(j) / (out.x(j) - s(j)));
      if (!std::isfinite(alpha)) break;
      out.x += alpha * (s - out.x);
      for (Eigen::Index j = 0; j < cols; ++j)
        if (passive[j] && out.x(j) <= tol) {
          passive[j] = false;
          out.x(j) = 0.0;
        }
      s = solve_passive();
    }
    out.x = s;
    w = a.transpose() * (b - a * out.x);
  }
  out.residual_norm = (a * out.x - b).norm();
  return out;
}

FitResult fit_measure(const std::vector<double>& targets, const RadialGrid& grid, bool allow_boundary_atom) {
  if (targets.size() < 2) throw std::invalid_argument("fit_measure needs at least 2 targets");
  if (grid.nodes.size() < 8 || grid.nodes.size() != grid.widths.size())
    throw std::invalid_argument("fit_measure needs a grid with at least 8 nodes");
  for (double t : targets)
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("moment targets must be finite and >= 0");

  const Eigen::Index rows = static_cast<Eigen::Index>(targets.size());
  const Eigen::Index nodes = static_cast<Eigen::Index>(grid.nodes.size());
  const Eigen::Index cols = nodes + (allow_boundary_atom ? 1 : 0);
  Eigen::MatrixXd m(rows, cols);
  Eigen::VectorXd t(rows), row_scale(rows);
  for (Eigen::Index n = 0; n < rows; ++n) {
    t(n) = targets[static_cast<std::size_t>(n)];
    row_scale(n) = t(n) > 0.0 ? 1.0 / t(n) : 1.0;
    for (Eigen::Index k = 0; k < nodes; ++k)
      m(n, k) = kTwoPi * std::pow(grid.nodes[k], 2 * n) * grid.widths[k];
    if (allow_boundary_atom) m(n, nodes) = kTwoPi * std::pow(grid.radius, 2 * n);
  }

  // Relative rows and unit columns; nonnegativity survives both scalings.
  Eigen::MatrixXd scaled = row_scale.asDiagonal() * m;
  Eigen::VectorXd col_scale(cols);
  for (Eigen::Index k = 0; k < cols; ++k) {
    const double nrm = scaled.col(k).norm();
    col_scale(k) = nrm > 0.0 ? 1.0 / nrm : 1.0;
  }
  scaled = scaled * col_scale.asDiagonal();
  const Eigen::VectorXd rhs = row_scale.cwiseProduct(t);
  const NnlsResult sol = nnls(scaled, rhs);
  const Eigen::VectorXd w = col_scale.cwiseProduct(sol.x);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);

  std::vector<Atom> atoms;
  std::vector<double> density(static_cast<std::size_t>(nodes));
  for (Eigen::Index k = 0; k < nodes; ++k) {
    density[static_cast<std::size_t>(k)] = w(k);
    if (w(k) > 0.0) atoms.push_back({grid.nodes[k], w(k) * grid.widths[k]});
  }
  const double boundary = allow_boundary_atom ? w(nodes) : 0.0;
  if (boundary > 0.0) atoms.push_back({grid.radius, boundary});

  FitResult out{RadialMeasure(std::move(atoms), Density{}, grid.radius), std::move(density), boundary, 0.0, 0.0,
                std::nullopt, sol.iterations};
  out.relative_residual = (row_scale.cwiseProduct(m * w - t)).norm() / rhs.norm();
  out.condition = smin > 0.0 ? sv(0) / smin : kInf;
  if (out.condition > 1e12)
    out.warning = "moment system is ill-conditioned (condition number " + std::to_string(out.condition) + ")";
  if (!sol.converged) out.warning = "active-set iteration hit its limit before the optimality test passed";
  return out;
}

std::string to_json(const RadialMeasure& measure) {
  nlohmann::json j;
  j["atoms"] = nlohmann::json::array();
  for (const Atom& a : measure.atoms()) j["atoms"].push_back({{"r", a.r}, {"w", a.w}});
  const Density& d = measure.density();
  switch (d.kind) {
    case DensityKind::kNone:
      j["density"] = {{"kind", "none"}, {"params", nlohmann::json::object()}};
      break;
    case DensityKind::kGaussianRadial:
      j["density"] = {{"kind", "gaussian_radial"}, {"params", {{"c", d.c}}}};
      break;
    case DensityKind::kLinearRadial:
      j["density"] = {{"kind", "linear_radial"}, {"params", {{"c", d.c}}}};
      break;
    case DensityKind::kTable:
      j["density"] = {{"kind", "table"}, {"params", {{"grid", d.grid}, {"values", d.values}}}};
      break;
  }
  if (measure.bounded())
    j["R"] = measure.radius();
  else
    j["R"] = "inf";
  return j.dump(2);
}

RadialMeasure measure_from_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) atoms.push_back({a.at("r").get<double>(), a.at("w").get<double>()});
    Density d;
    const auto& dj = j.at("density");
    const std::string kind = dj.at("kind").get<std::string>();
    const auto& p = dj.at("params");
    if (kind == "none") {
      d.kind = DensityKind::kNone;
    } else if (kind == "gaussian_radial") {
      d = {DensityKind::kGaussianRadial, p.at("c").get<double>(), {}, {}};
    } else if (kind == "linear_radial") {
      d = {DensityKind::kLinearRadial, p.at("c").get<double>(), {}, {}};
    } else if (kind == "table") {
      d = {DensityKind::kTable, 0.0, p.at("grid").get<std::vector<double>>(), p.at("values").get<std::vector<double>>()};
    } else {
      throw std::invalid_argument("unknown density kind " + kind);
    }
    double radius = kInf;
    if (j.at("R").is_number())
      radius = j.at("R").get<double>();
    else if (j.at("R").get<std::string>() != "inf")
      throw std::invalid_argument("R must be a number or \"inf\"");
    return RadialMeasure(std::move(atoms), std::move(d), radius);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("measure document: ") + e.what());
  }
}

}  // namespace susyvcs::moments
