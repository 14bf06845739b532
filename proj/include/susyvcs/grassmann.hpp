#pragma once

#include <complex>
#include <vector>

#include "susyvcs/vcs.hpp"

namespace susyvcs::grassmann {

using Complex = std::complex<double>;
using fock::Matrix;
using fock::Vector;

/// a(z, zbar) = sum_(n<=N) analytic[n] z^n + sum_(1<=n<=N+1) antianalytic[n] zbar^n.
/// antianalytic[0] is unused and kept at zero; the extra level N+1 holds the
/// image of Phi^f_N.
struct HolFunction {
  std::vector<Complex> analytic;
  std::vector<Complex> antianalytic;

  static HolFunction zero(int n);
  int truncation() const { return static_cast<int>(analytic.size()) - 1; }
  Complex operator()(Complex z) const;
};

/// Phi^b_n -> z^n / sqrt(eps_n!), Phi^f_n -> zbar^(n+1) / sqrt(eps_(n+1)!).
/// Needs a non-extended layout.
HolFunction w_map(const fock::SpaceLayout& layout, const Vector& v);
Vector w_inverse(const fock::SpaceLayout& layout, const HolFunction& f);

/// int conj(f) g dmu; analytic and antianalytic parts are orthogonal.
Complex hol_inner(const HolFunction& f, const HolFunction& g, const moments::RadialMeasure& measure);

/// Displayed action on raw coefficients: eps_n-weighted swap of z^n and zbar^n.
/// Q_hol kills constants and antianalytic input; Q_hol^dag kills analytic input
/// and drops the level past N.
HolFunction q_hol(const spectra::EnergySequence& seq, const HolFunction& f);
HolFunction q_hol_dag(const spectra::EnergySequence& seq, const HolFunction& f);

/// Matrix of a map on HolFunction in the monomial basis W Phi, ordered like the layout.
Matrix hol_matrix(const fock::SpaceLayout& layout, HolFunction (*op)(const spectra::EnergySequence&, const HolFunction&));

/// Element c1 + cz zeta + czb zetabar + czbz zetabar zeta of the Grassmann
/// algebra in one complex generator.
struct GrassmannNumber {
  Complex one, z, zb, zbz;

  static GrassmannNumber scalar(Complex c) { return {c, 0.0, 0.0, 0.0}; }
  static GrassmannNumber zeta() { return {0.0, 1.0, 0.0, 0.0}; }
  static GrassmannNumber zeta_bar() { return {0.0, 0.0, 1.0, 0.0}; }

  GrassmannNumber operator+(const GrassmannNumber& o) const;
  GrassmannNumber operator-(const GrassmannNumber& o) const;
  GrassmannNumber operator*(const GrassmannNumber& o) const;
  GrassmannNumber operator*(Complex c) const;
  bool operator==(const GrassmannNumber& o) const;
  // Antilinear and order-reversing: conj(zeta) = zetabar, conj(zetabar zeta) = zetabar zeta.
  GrassmannNumber conj() const;
};

enum class BerezinOrdering {
  kBarZetaZeta,  // int zetabar zeta dzeta = 1
  kZetaBarZeta,  // int zeta zetabar dzeta = 1
};

/// Berezin integral: picks the top coefficient with the ordering's sign.
Complex berezin(const GrassmannNumber& x, BerezinOrdering ordering);

/// body(z) + zeta soul(z) with raw monomial coefficients; soul[0] must be 0.
struct GradedFunction {
  std::vector<Complex> body;
  std::vector<Complex> soul;
};

/// int conj(f) g [1 + zetabar zeta] dzeta dmu. Throws std::invalid_argument on
/// mismatched truncations or a nonzero soul constant.
Complex graded_scalar_product(const GradedFunction& f, const GradedFunction& g, const moments::RadialMeasure& measure,
                              BerezinOrdering ordering = BerezinOrdering::kBarZetaZeta);

/// (b1 + zeta s1)(b2 + zeta s2) = b1 b2 + zeta (b1 s2 + s1 b2); the zeta^2
/// term is absent by construction. Degrees add without truncation.
GradedFunction graded_product(const GradedFunction& f, const GradedFunction& g);

/// |z, zeta> with N^(-1/2) folded in; throws vcs::DomainError outside the domain.
GradedFunction grassmann_vcs(const vcs::VcsFamily& family, Complex z);

struct GrassmannFrame {
  BerezinOrdering ordering;
  // Graded space: body levels 0..N, then soul levels 1..N.
  Matrix frame;
  double body_deviation = 0;  // max |F - I| on body levels <= N-1
  double soul_deviation = 0;  // same on soul levels 1..N-1
  double minus_identity_deviation = 0;  // same two blocks against -I
  std::vector<double> soul_diagonal;  // F at soul level n, index n-1
};

/// Frame with the weight N(|z|^2)[zetabar zeta - 1] under the given ordering.
GrassmannFrame grassmann_frame(const vcs::VcsFamily& family, BerezinOrdering ordering);

struct GrassmannResolution {
  GrassmannFrame bar_zeta_zeta;
  GrassmannFrame zeta_bar_zeta;
  // The ordering whose frame is +I on interior levels (within tol), if any.
  std::optional<BerezinOrdering> identity_ordering;
};

GrassmannResolution grassmann_resolution(const vcs::VcsFamily& family, double tol = 1e-8);

}  // namespace susyvcs::grassmann
