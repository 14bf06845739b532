#include "susyvcs/vcs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <ostream>

#include "json.hpp"

namespace susyvcs::vcs {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogHalfSqrt = -0.5 * std::log(2.0);

// eps_k, continuing a table with its last value.
double eps_or_limit(const spectra::EnergySequence& seq, std::size_t k) {
  if (auto size = seq.size(); size && k >= *size) return seq.limit();
  return seq.eps(k);
}

// sup_{k >= from} x / eps_k for the built-in increasing kinds; tables scan what is left.
double ratio_bound(const spectra::EnergySequence& seq, double x, std::size_t from) {
  double lowest = eps_or_limit(seq, from);
  if (auto size = seq.size())
    for (std::size_t k = from; k < *size; ++k) lowest = std::min(lowest, seq.eps(k));
  if (lowest <= 0.0) return kInf;
  return x / lowest;
}

// sum_(n>=0) w^n / eps_n! for complex w; the n = 0 term is included.
Complex kernel_series(const spectra::EnergySequence& seq, Complex w, double& tail_out) {
  const double x = std::abs(w);
  Complex sum = 1.0, term = 1.0;
  tail_out = 0.0;
  if (x == 0.0) return sum;
  const std::optional<std::size_t> size = seq.size();
  for (std::size_t n = 1; n < 1000000; ++n) {
    if (size && n >= *size) break;
    term *= w / seq.eps(n);
    sum += term;
    const double rho = ratio_bound(seq, x, n + 1);
    if (rho < 1.0) {
      tail_out = std::abs(term) * rho / (1.0 - rho);
      if (tail_out < 1e-14 * std::abs(sum)) break;
    }
  }
  return sum;
}

std::vector<double> gauss_legendre_nodes(int points, std::vector<double>& weights) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(points, points);
  for (int k = 1; k < points; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  std::vector<double> nodes(points);
  weights.assign(points, 0.0);
  for (int k = 0; k < points; ++k) {
    nodes[k] = es.eigenvalues()(k);
    const double v0 = es.eigenvectors()(0, k);
    weights[k] = 2.0 * v0 * v0;
  }
  return nodes;
}

// Nodes and weights of a quadrature rule for dlambda.
void radial_rule(const moments::RadialMeasure& measure, std::vector<double>& r, std::vector<double>& w) {
  for (const auto& a : measure.atoms()) {
    r.push_back(a.r);
    w.push_back(a.w);
  }
  const moments::Density& d = measure.density();
  if (d.kind == moments::DensityKind::kNone) return;
  double lo = 0.0, hi = measure.radius();
  if (d.kind == moments::DensityKind::kTable) {
    lo = d.grid.front();
    hi = d.grid.back();
  } else if (!std::isfinite(hi)) {
    if (d.kind != moments::DensityKind::kGaussianRadial)
      throw moments::DivergenceError("density has no finite quadrature on an unbounded support");
    hi = 12.0;  // e^(-144) is far below double precision at any moment order used here
  }
  std::vector<double> gw;
  const std::vector<double> gx = gauss_legendre_nodes(20, gw);
  constexpr int kPanels = 64;
  const double h = (hi - lo) / kPanels;
  for (int p = 0; p < kPanels; ++p) {
    const double a = lo + p * h;
    for (std::size_t k = 0; k < gx.size(); ++k) {
      const double x = a + 0.5 * h * (gx[k] + 1.0);
      r.push_back(x);
      w.push_back(0.5 * h * gw[k] * d(x));
    }
  }
}

Matrix frame_with(const std::vector<Component>& comps, int dim, const std::function<double(int)>& log_moment_of) {
  Matrix out = Matrix::Zero(dim, dim);
  std::map<int, std::vector<const Component*>> by_freq;
  for (const auto& c : comps) by_freq[c.freq].push_back(&c);
  std::map<int, double> cache;
  auto log_m = [&](int q) {
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    return cache[q] = log_moment_of(q);
  };
  for (const auto& [freq, group] : by_freq) {
    for (const Component* a : group)
      for (const Component* b : group) {
        if ((a->power + b->power) % 2 != 0) throw std::logic_error("odd radial power in the frame integrand");
        const double lm = log_m((a->power + b->power) / 2);
        if (!std::isfinite(lm)) continue;
        out(a->slot, b->slot) += std::exp(a->log_amp + b->log_amp + lm);
      }
  }
  return out;
}

std::vector<Complex> sample_points(double radius) {
  const double r0 = std::isfinite(radius) ? 0.5 * radius : 0.8;
  std::vector<Complex> out;
  for (double scale : {0.3, 1.0})
    for (int k = 0; k < 6; ++k) out.push_back(std::polar(scale * r0, k * M_PI / 3.0 + 0.1));
  return out;
}

}  // namespace

VcsFamily::VcsFamily(fock::SpaceLayout layout, moments::RadialMeasure measure)
    : VcsFamily(std::move(layout), std::move(measure), true) {}

VcsFamily::VcsFamily(fock::SpaceLayout layout, moments::RadialMeasure measure, bool verify)
    : layout_(std::move(layout)), measure_(std::move(measure)) {
  if (verify) {
    const auto report = moments::verify_moments(measure_, layout_.sequence(), layout_.truncation(), 1e-8);
    if (!report.pass)
      throw std::invalid_argument("measure moments do not match eps_n! at n = " +
                                  std::to_string(*report.first_failure));
    verified_ = true;
  }
}

VcsFamily VcsFamily::unverified(fock::SpaceLayout layout, moments::RadialMeasure measure) {
  return VcsFamily(std::move(layout), std::move(measure), false);
}

double VcsFamily::domain_radius() const {
  return std::sqrt(sequence().limit());
}

void VcsFamily::check_domain(Complex z) const {
  if (!(std::abs(z) < domain_radius()))
    throw DomainError("|z| = " + std::to_string(std::abs(z)) + " is outside the domain of radius " +
                      std::to_string(domain_radius()));
}

std::optional<std::string> VcsFamily::boundary_warning(Complex z) const {
  const double r = domain_radius();
  if (std::isfinite(r) && std::abs(z) > 0.95 * r)
    return "|z| is within 5% of the domain boundary; series converge slowly";
  return std::nullopt;
}

VcsFamily oscillator_family(int n, bool extended) {
  return VcsFamily(fock::build_layout(spectra::EnergySequence::oscillator(), n, extended),
                   moments::oscillator_measure());
}

double normalization_series(const spectra::EnergySequence& seq, double x) {
  double tail = 0.0;
  return 2.0 * kernel_series(seq, Complex(x, 0.0), tail).real() - 1.0;
}

double normalization(const VcsFamily& family, Complex z) {
  family.check_domain(z);
  return normalization_series(family.sequence(), std::norm(z));
}

double tail_bound(const spectra::EnergySequence& seq, double x, int n_max) {
  if (x == 0.0) return 0.0;
  const std::size_t next = static_cast<std::size_t>(n_max) + 1;
  if (auto size = seq.size(); size && next >= *size) return 0.0;
  const double rho = ratio_bound(seq, x, next + 1);
  if (!(rho < 1.0)) return kInf;
  const double first = std::exp(static_cast<double>(next) * std::log(x) - seq.log_factorial(next));
  return first / (1.0 - rho);
}

Vector CoeffVector::state(const fock::SpaceLayout& layout) const {
  Vector v = Vector::Zero(layout.dim());
  const double s = 1.0 / std::sqrt(normalization);
  for (std::size_t n = 0; n < bosonic.size(); ++n) v(layout.bos(static_cast<int>(n))) = s * bosonic[n];
  for (std::size_t n = 0; n < fermionic.size(); ++n) v(layout.fer(static_cast<int>(n))) = s * fermionic[n];
  return v;
}

CoeffVector coeffs(const VcsFamily& family, Complex z) {
  family.check_domain(z);
  const int n_max = family.truncation();
  const auto& seq = family.sequence();
  const std::vector<double> logf = seq.log_factorials(static_cast<std::size_t>(n_max));
  CoeffVector out;
  out.z = z;
  const double r = std::abs(z), theta = std::arg(z);
  auto amp = [&](int n) {
    if (n == 0) return 1.0;
    if (r == 0.0) return 0.0;
    return std::exp(n * std::log(r) - 0.5 * logf[n]);
  };
  for (int n = 0; n <= n_max; ++n) out.bosonic.push_back(std::polar(amp(n), n * theta));
  for (int n = 0; n < n_max; ++n) out.fermionic.push_back(std::polar(amp(n + 1), -(n + 1) * theta));
  out.normalization = normalization(family, z);
  out.tail_bound = tail_bound(seq, r * r, n_max);
  out.warning = family.boundary_warning(z);
  return out;
}

Complex overlap(const VcsFamily& family, Complex z1, Complex z2) {
  family.check_domain(z1);
  family.check_domain(z2);
  const Complex w = std::conj(z1) * z2;
  double tail = 0.0;
  const Complex k = kernel_series(family.sequence(), w, tail);
  // sum_n w^n/eps_n! + sum_(n>=1) conj(w)^n/eps_n!
  const Complex total = k + std::conj(k) - 1.0;
  return total / std::sqrt(normalization(family, z1) * normalization(family, z2));
}

std::vector<Component> plain_components(const fock::SpaceLayout& layout) {
  const int n_max = layout.truncation();
  const std::vector<double> logf = layout.sequence().log_factorials(static_cast<std::size_t>(n_max));
  std::vector<Component> out;
  for (int n = 0; n <= n_max; ++n) out.push_back({layout.bos(n), -0.5 * logf[n], n, n});
  for (int n = 0; n < n_max; ++n) out.push_back({layout.fer(n), -0.5 * logf[n + 1], n + 1, -(n + 1)});
  return out;
}

std::vector<Component> extended_components(const fock::SpaceLayout& layout, ExtendedReading reading) {
  if (!layout.extended()) throw std::invalid_argument("extended components need an extended layout");
  const int n_max = layout.truncation();
  const std::vector<double> logf = layout.sequence().log_factorials(static_cast<std::size_t>(n_max));
  const double extra = reading == ExtendedReading::kLiteral ? kLogHalfSqrt : 0.0;
  std::vector<Component> out;
  out.push_back({layout.bos(0), kLogHalfSqrt, 0, 0});
  out.push_back({layout.chi(), kLogHalfSqrt, 0, 0});
  for (int n = 1; n <= n_max; ++n) {
    out.push_back({layout.bos(n), extra - 0.5 * logf[n], n, n});
    out.push_back({layout.fer(n - 1), extra - 0.5 * logf[n], n, -n});
  }
  return out;
}

Vector component_vector(const std::vector<Component>& comps, int dim, Complex z) {
  Vector v = Vector::Zero(dim);
  const double r = std::abs(z), theta = std::arg(z);
  for (const auto& c : comps) {
    const double mag = c.power == 0 ? std::exp(c.log_amp) : std::exp(c.log_amp) * std::pow(r, c.power);
    v(c.slot) += std::polar(mag, c.freq * theta);
  }
  return v;
}

Matrix frame_from_components(const std::vector<Component>& comps, int dim, const moments::RadialMeasure& measure) {
  return frame_with(comps, dim, [&](int q) { return moments::log_moment(measure, q); });
}

Matrix frame_from_moments(const std::vector<Component>& comps, int dim, const std::vector<double>& moments) {
  return frame_with(comps, dim, [&](int q) {
    if (q >= static_cast<int>(moments.size())) throw std::out_of_range("frame needs moment " + std::to_string(q));
    return moments[q] > 0.0 ? std::log(moments[q]) : -kInf;
  });
}

double frame_deviation(const Matrix& frame, const fock::SpaceLayout& layout, int upto) {
  std::vector<int> idx;
  for (int n = 0; n <= upto; ++n) {
    idx.push_back(layout.bos(n));
    idx.push_back(layout.fer(n));
  }
  double out = 0.0;
  for (int i : idx)
    for (int j : idx) out = std::max(out, std::abs(frame(i, j) - (i == j ? 1.0 : 0.0)));
  return out;
}

FrameReport frame_operator(const VcsFamily& family, std::optional<int> check_upto) {
  const auto& layout = family.layout();
  FrameReport out;
  out.frame = frame_from_components(plain_components(layout), layout.dim(), family.measure());
  out.check_upto = check_upto.value_or(layout.truncation() - 1);
  if (out.check_upto < 0 || out.check_upto >= layout.truncation())
    throw std::invalid_argument("check_upto must lie in [0, N-1]");
  out.deviation = frame_deviation(out.frame, layout, out.check_upto);
  for (int n = 0; n <= layout.truncation(); ++n) out.bosonic_diagonal.push_back(out.frame(layout.bos(n), layout.bos(n)).real());
  return out;
}

Matrix frame_operator_2d(const VcsFamily& family) {
  const auto& layout = family.layout();
  if (layout.truncation() > 10) throw std::invalid_argument("2D quadrature frame is limited to N <= 10");
  const std::vector<Component> comps = plain_components(layout);
  std::vector<double> rn, rw;
  radial_rule(family.measure(), rn, rw);
  const int angles = 4 * layout.truncation() + 16;
  const double dtheta = 2.0 * M_PI / angles;
  Matrix out = Matrix::Zero(layout.dim(), layout.dim());
  for (std::size_t i = 0; i < rn.size(); ++i) {
    if (rw[i] == 0.0) continue;
    for (int a = 0; a < angles; ++a) {
      const Vector c = component_vector(comps, layout.dim(), std::polar(rn[i], a * dtheta));
      out.noalias() += (rw[i] * dtheta) * (c * c.adjoint());
    }
  }
  return out;
}

ExtendedFrameReport extended_frame(const VcsFamily& family) {
  const auto& layout = family.layout();
  if (!layout.extended()) throw std::invalid_argument("extended_frame needs an extended layout");
  const int dim = layout.dim();
  const int n_max = layout.truncation();
  ExtendedFrameReport out;

  const auto comps = extended_components(layout, ExtendedReading::kNormalized);
  out.frame = frame_from_components(comps, dim, family.measure());
  const Matrix& s = out.frame;
  out.projector_residual = (s * s - s).cwiseAbs().maxCoeff();
  const fock::PsiBasis pst = fock::psi_tilde_basis(layout);
  for (int n = 0; n < n_max; ++n)
    out.span_residual = std::max(out.span_residual, (s * pst.vectors.col(n) - pst.vectors.col(n)).norm());
  out.identity_deviation = fock::max_abs_off_edge(s - Matrix::Identity(dim, dim), layout.edge_band());
  Vector v = Vector::Zero(dim);
  v(layout.bos(0)) = 1.0 / std::sqrt(2.0);
  v(layout.chi()) = -1.0 / std::sqrt(2.0);
  out.kernel_residual = (s * v).norm();

  const auto literal = extended_components(layout, ExtendedReading::kLiteral);
  out.literal_frame = frame_from_components(literal, dim, family.measure());
  out.literal_projector_residual = (out.literal_frame * out.literal_frame - out.literal_frame).cwiseAbs().maxCoeff();

  // Projection P~|z>~ against the plain state.
  auto projection_residual = [&](const std::vector<Component>& cs, Complex z) {
    Vector ext = component_vector(cs, dim, z);
    ext(layout.chi()) = 0.0;
    const Vector plain = coeffs(family, z).state(layout);
    const Complex alpha = plain.dot(ext) / plain.squaredNorm();
    return (ext - alpha * plain).norm() / ext.norm();
  };
  double worst_ratio = 0.0;
  for (Complex z : sample_points(family.domain_radius())) {
    out.projection_residual = std::max(out.projection_residual, projection_residual(comps, z));
    out.literal_projection_residual = std::max(out.literal_projection_residual, projection_residual(literal, z));
    const double nz = normalization(family, z);
    const double norm2 = component_vector(literal, dim, z).squaredNorm() / nz;
    const double predicted = (nz + 1.0) / (2.0 * nz);
    worst_ratio = std::max(worst_ratio, std::abs(norm2 / predicted - 1.0));
    out.literal_norm_at_sample = norm2;
  }
  out.literal_norm_ratio_error = worst_ratio;
  return out;
}

FqheReport fqhe_frame(int n, int k) {
  if (n < 2 || k < 1) throw std::invalid_argument("fqhe_frame needs N >= 2 and K >= 1");
  const fock::SpaceLayout layout = fock::build_layout(spectra::EnergySequence::oscillator(), n, false);
  const moments::RadialMeasure measure = moments::oscillator_measure();
  const int block = layout.dim();
  FqheReport out;
  out.n = n;
  out.k = k;
  out.frame = Matrix::Zero(block * k, block * k);
  for (int level = 0; level < k; ++level) {
    std::vector<Component> comps = plain_components(layout);
    for (auto& c : comps) c.slot += level * block;
    out.frame += frame_from_components(comps, block * k, measure);
  }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      const Matrix blk = out.frame.block(a * block, b * block, block, block);
      if (a == b)
        out.deviation = std::max(out.deviation, frame_deviation(blk, layout, n - 1));
      else
        out.cross_block_max = std::max(out.cross_block_max, blk.cwiseAbs().maxCoeff());
    }
  return out;
}

void write_frame_csv(std::ostream& os, const Matrix& frame) {
  os << "row,col,value,deviation\n";
  os.precision(17);
  for (int i = 0; i < frame.rows(); ++i)
    for (int j = 0; j < frame.cols(); ++j) {
      const double v = frame(i, j).real();
      os << i << ',' << j << ',' << v << ',' << v - (i == j ? 1.0 : 0.0) << '\n';
    }
}

std::string evaluation_json(const VcsFamily& family, Complex z) {
  const CoeffVector c = coeffs(family, z);
  double b = 0.0, f = 0.0;
  for (const auto& x : c.bosonic) b += std::norm(x);
  for (const auto& x : c.fermionic) f += std::norm(x);
  nlohmann::json j;
  j["z"] = {z.real(), z.imag()};
  j["normalization"] = c.normalization;
  j["coeff_norms"] = {{"bosonic", b / c.normalization}, {"fermionic", f / c.normalization}};
  j["tail_bound"] = c.tail_bound;
  if (c.warning) j["warning"] = *c.warning;
  return j.dump(2);
}

}  // namespace susyvcs::vcs
