#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "susyvcs/fock.hpp"
#include "susyvcs/moments.hpp"

namespace susyvcs::vcs {

using Complex = std::complex<double>;
using fock::Matrix;
using fock::Vector;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Sequence, truncated layout and radial measure of one VCS family. The
/// domain is |z| < sqrt(lim eps_n).
class VcsFamily {
 public:
  // Verifies moments against eps_n! for n <= N at relative 1e-8; throws
  // std::invalid_argument when they disagree.
  VcsFamily(fock::SpaceLayout layout, moments::RadialMeasure measure);
  // Skips verification; frames of such families report their deviations.
  static VcsFamily unverified(fock::SpaceLayout layout, moments::RadialMeasure measure);

  const fock::SpaceLayout& layout() const { return layout_; }
  const spectra::EnergySequence& sequence() const { return layout_.sequence(); }
  const moments::RadialMeasure& measure() const { return measure_; }
  double domain_radius() const;
  bool verified() const { return verified_; }
  int truncation() const { return layout_.truncation(); }

  // Throws DomainError outside the domain.
  void check_domain(Complex z) const;
  // Set when |z| > 0.95 domain_radius.
  std::optional<std::string> boundary_warning(Complex z) const;

 private:
  VcsFamily(fock::SpaceLayout layout, moments::RadialMeasure measure, bool verify);

  fock::SpaceLayout layout_;
  moments::RadialMeasure measure_;
  bool verified_ = false;
};

VcsFamily oscillator_family(int n, bool extended = false);

/// N(|z|^2) = 1 + 2 sum_(n>=1) |z|^(2n) / eps_n!, summed until the tail bound
/// drops below 1e-14 of the partial sum.
double normalization(const VcsFamily& family, Complex z);
/// Same series as a function of x = |z|^2.
double normalization_series(const spectra::EnergySequence& seq, double x);

/// Sum_(n > n_max) x^n / eps_n! bounded by a geometric ratio; +inf when the
/// ratio bound is not below 1.
double tail_bound(const spectra::EnergySequence& seq, double x, int n_max);

struct CoeffVector {
  Complex z;
  std::vector<Complex> bosonic;    // z^n / sqrt(eps_n!), n <= N
  std::vector<Complex> fermionic;  // conj(z)^(n+1) / sqrt(eps_(n+1)!), n <= N-1
  double normalization = 1.0;
  double tail_bound = 0.0;
  std::optional<std::string> warning;

  // N^(-1/2) (sum c_n Phi^b_n + sum d_n Phi^f_n) on the given layout.
  Vector state(const fock::SpaceLayout& layout) const;
};

CoeffVector coeffs(const VcsFamily& family, Complex z);

/// <z1|z2> from the series, normalized by both N factors.
Complex overlap(const VcsFamily& family, Complex z1, Complex z2);

/// One basis slot of a coherent-state family: amplitude exp(log_amp) r^power e^(i freq theta).
struct Component {
  int slot = 0;
  double log_amp = 0.0;
  int power = 0;
  int freq = 0;
};

/// Components of the plain VCS (Phi^b_n for n <= N, Phi^f_n for n <= N-1).
std::vector<Component> plain_components(const fock::SpaceLayout& layout);

enum class ExtendedReading {
  // z^n / sqrt(eps_n!) on Psi_n for n >= 1, Psi~_0 for n = 0.
  kNormalized,
  // z^n / sqrt(eps_n!) on Psi~_n = Psi_n / sqrt2 for every n.
  kLiteral,
};
std::vector<Component> extended_components(const fock::SpaceLayout& layout, ExtendedReading reading);

/// Unnormalized coefficient vector sum_i amp_i r^p_i e^(i f_i theta) e_slot.
Vector component_vector(const std::vector<Component>& comps, int dim, Complex z);

/// int |c(z)><c(z)| dlambda dtheta by angular reduction: only equal
/// frequencies survive and each surviving entry is a radial moment.
Matrix frame_from_components(const std::vector<Component>& comps, int dim, const moments::RadialMeasure& measure);
/// Same with moments supplied directly (moments[p] = 2 pi int r^(2p) dlambda).
Matrix frame_from_moments(const std::vector<Component>& comps, int dim, const std::vector<double>& moments);

struct FrameReport {
  Matrix frame;
  // max |F - I| over rows/columns with level index <= check_upto.
  double deviation = 0.0;
  int check_upto = 0;
  std::vector<double> bosonic_diagonal;  // F at Phi^b_n
};

/// Plain frame operator on the SUSY part of the layout. check_upto defaults to N-1.
FrameReport frame_operator(const VcsFamily& family, std::optional<int> check_upto = std::nullopt);
/// Deviation of a SUSY-layout frame from the identity on levels <= upto.
double frame_deviation(const Matrix& frame, const fock::SpaceLayout& layout, int upto);

/// Independent 2D tensor quadrature of the frame (Gauss-Legendre in r,
/// trapezoid in theta). Only for N <= 10.
Matrix frame_operator_2d(const VcsFamily& family);

struct ExtendedFrameReport {
  Matrix frame;                  // S under the normalized reading
  double projector_residual = 0;  // max |S^2 - S|
  double span_residual = 0;       // max |S Psi~_n - Psi~_n|, n <= N-1
  double identity_deviation = 0;  // max |S - I| off the edge band
  double kernel_residual = 0;     // |S v| for v = (phi^b_0 - chi)/sqrt2
  // Relative distance of P~|z>~ from the best multiple of |z> over sample points.
  double projection_residual = 0;
  // Literal reading diagnostics.
  Matrix literal_frame;
  double literal_projector_residual = 0;
  double literal_projection_residual = 0;
  // <z|z>~ under the literal reading at the sample points divided by the
  // predicted (N+1)/(2N); should be 1.
  double literal_norm_ratio_error = 0;
  double literal_norm_at_sample = 0;
};

// Requires an extended layout.
ExtendedFrameReport extended_frame(const VcsFamily& family);

struct FqheReport {
  int n = 0;
  int k = 0;
  double deviation = 0;        // block-diagonal identity on interior levels
  double cross_block_max = 0;  // largest entry linking different k
  Matrix frame;
};

/// Degenerate oscillator VCS on C^2 (x) H with levels n <= N and degeneracy k < K.
FqheReport fqhe_frame(int n, int k);

void write_frame_csv(std::ostream& os, const Matrix& frame);
std::string evaluation_json(const VcsFamily& family, Complex z);

}  // namespace susyvcs::vcs
