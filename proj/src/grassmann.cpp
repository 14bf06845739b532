#include "susyvcs/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace susyvcs::grassmann {
namespace {

void require_plain(const fock::SpaceLayout& layout) {
  if (layout.extended()) throw std::invalid_argument("holomorphic map needs a non-extended layout");
}

std::vector<Complex> poly_product(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Complex> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<Complex> poly_sum(std::vector<Complex> a, const std::vector<Complex>& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

}  // namespace

HolFunction HolFunction::zero(int n) {
  return {std::vector<Complex>(n + 1, 0.0), std::vector<Complex>(n + 2, 0.0)};
}

Complex HolFunction::operator()(Complex z) const {
  Complex out = 0.0, p = 1.0;
  for (const Complex& a : analytic) {
    out += a * p;
    p *= z;
  }
  p = 1.0;
  for (const Complex& b : antianalytic) {
    out += b * p;
    p *= std::conj(z);
  }
  return out;
}

HolFunction w_map(const fock::SpaceLayout& layout, const Vector& v) {
  require_plain(layout);
  const int n_max = layout.truncation();
  const auto& seq = layout.sequence();
  HolFunction f = HolFunction::zero(n_max);
  for (int n = 0; n <= n_max; ++n) {
    f.analytic[n] = v(layout.bos(n)) / std::sqrt(seq.factorial(n));
    f.antianalytic[n + 1] = v(layout.fer(n)) / std::sqrt(seq.factorial(n + 1));
  }
  return f;
}

Vector w_inverse(const fock::SpaceLayout& layout, const HolFunction& f) {
  require_plain(layout);
  const int n_max = layout.truncation();
  if (f.truncation() != n_max || static_cast<int>(f.antianalytic.size()) != n_max + 2)
    throw std::invalid_argument("holomorphic function truncation does not match the layout");
  const auto& seq = layout.sequence();
  Vector v = Vector::Zero(layout.dim());
  for (int n = 0; n <= n_max; ++n) {
    v(layout.bos(n)) = f.analytic[n] * std::sqrt(seq.factorial(n));
    v(layout.fer(n)) = f.antianalytic[n + 1] * std::sqrt(seq.factorial(n + 1));
  }
  return v;
}

Complex hol_inner(const HolFunction& f, const HolFunction& g, const moments::RadialMeasure& measure) {
  Complex out = 0.0;
  for (std::size_t n = 0; n < std::min(f.analytic.size(), g.analytic.size()); ++n)
    if (f.analytic[n] != 0.0 && g.analytic[n] != 0.0)
      out += std::conj(f.analytic[n]) * g.analytic[n] * moments::moment(measure, static_cast<int>(n));
  for (std::size_t n = 1; n < std::min(f.antianalytic.size(), g.antianalytic.size()); ++n)
    if (f.antianalytic[n] != 0.0 && g.antianalytic[n] != 0.0)
      out += std::conj(f.antianalytic[n]) * g.antianalytic[n] * moments::moment(measure, static_cast<int>(n));
  // z^0 against zbar^0 is the only surviving cross term and antianalytic[0] is unused.
  return out;
}

HolFunction q_hol(const spectra::EnergySequence& seq, const HolFunction& f) {
  HolFunction out = HolFunction::zero(f.truncation());
  for (int n = 1; n <= f.truncation(); ++n) out.antianalytic[n] = f.analytic[n] * std::sqrt(seq.eps(n));
  return out;
}

HolFunction q_hol_dag(const spectra::EnergySequence& seq, const HolFunction& f) {
  HolFunction out = HolFunction::zero(f.truncation());
  for (int n = 1; n <= f.truncation(); ++n) out.analytic[n] = f.antianalytic[n] * std::sqrt(seq.eps(n));
  return out;
}

Matrix hol_matrix(const fock::SpaceLayout& layout,
                  HolFunction (*op)(const spectra::EnergySequence&, const HolFunction&)) {
  const int dim = layout.dim();
  Matrix out(dim, dim);
  for (int j = 0; j < dim; ++j) {
    Vector e = Vector::Zero(dim);
    e(j) = 1.0;
    out.col(j) = w_inverse(layout, op(layout.sequence(), w_map(layout, e)));
  }
  return out;
}

GrassmannNumber GrassmannNumber::operator+(const GrassmannNumber& o) const {
  return {one + o.one, z + o.z, zb + o.zb, zbz + o.zbz};
}

GrassmannNumber GrassmannNumber::operator-(const GrassmannNumber& o) const {
  return {one - o.one, z - o.z, zb - o.zb, zbz - o.zbz};
}

GrassmannNumber GrassmannNumber::operator*(const GrassmannNumber& o) const {
  // zeta^2 = zetabar^2 = 0, zeta zetabar = -zetabar zeta
  return {one * o.one, one * o.z + z * o.one, one * o.zb + zb * o.one,
          one * o.zbz + zbz * o.one + zb * o.z - z * o.zb};
}

GrassmannNumber GrassmannNumber::operator*(Complex c) const {
  return {one * c, z * c, zb * c, zbz * c};
}

bool GrassmannNumber::operator==(const GrassmannNumber& o) const {
  return one == o.one && z == o.z && zb == o.zb && zbz == o.zbz;
}

GrassmannNumber GrassmannNumber::conj() const {
  return {std::conj(one), std::conj(zb), std::conj(z), std::conj(zbz)};
}

Complex berezin(const GrassmannNumber& x, BerezinOrdering ordering) {
  return ordering == BerezinOrdering::kBarZetaZeta ? x.zbz : -x.zbz;
}

Complex graded_scalar_product(const GradedFunction& f, const GradedFunction& g, const moments::RadialMeasure& measure,
                              BerezinOrdering ordering) {
  if (f.body.size() != g.body.size() || f.soul.size() != g.soul.size())
    throw std::invalid_argument("graded functions have different truncations");
  if ((!f.soul.empty() && f.soul[0] != 0.0) || (!g.soul.empty() && g.soul[0] != 0.0))
    throw std::invalid_argument("soul part must vanish at z = 0");
  const GrassmannNumber weight = GrassmannNumber::scalar(1.0) + GrassmannNumber::zeta_bar() * GrassmannNumber::zeta();
  const GrassmannNumber gen[2] = {GrassmannNumber::scalar(1.0), GrassmannNumber::zeta()};
  const std::vector<Complex>* fp[2] = {&f.body, &f.soul};
  const std::vector<Complex>* gp[2] = {&g.body, &g.soul};
  Complex out = 0.0;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      const Complex s = berezin(gen[k].conj() * gen[l] * weight, ordering);
      if (s == 0.0) continue;
      const auto& a = *fp[k];
      const auto& b = *gp[l];
      Complex radial = 0.0;
      for (std::size_t n = 0; n < std::min(a.size(), b.size()); ++n)
        if (a[n] != 0.0 && b[n] != 0.0) radial += std::conj(a[n]) * b[n] * moments::moment(measure, static_cast<int>(n));
      out += s * radial;
    }
  return out;
}

GradedFunction graded_product(const GradedFunction& f, const GradedFunction& g) {
  return {poly_product(f.body, g.body), poly_sum(poly_product(f.body, g.soul), poly_product(f.soul, g.body))};
}

GradedFunction grassmann_vcs(const vcs::VcsFamily& family, Complex z) {
  const vcs::CoeffVector c = vcs::coeffs(family, z);
  const auto& seq = family.sequence();
  const double scale = 1.0 / std::sqrt(c.normalization);
  GradedFunction out;
  for (std::size_t n = 0; n < c.bosonic.size(); ++n) {
    // coefficient of xi_n is c_n; xi_n = z^n / sqrt(eps_n!)
    const Complex raw = scale * c.bosonic[n] / std::sqrt(seq.factorial(n));
    out.body.push_back(raw);
    out.soul.push_back(n == 0 ? Complex(0.0) : raw);
  }
  return out;
}

GrassmannFrame grassmann_frame(const vcs::VcsFamily& family, BerezinOrdering ordering) {
  const auto& layout = family.layout();
  const int n_max = layout.truncation();
  const std::vector<double> logf = family.sequence().log_factorials(static_cast<std::size_t>(n_max));
  // Body slots 0..N, soul slots N+1..2N for levels 1..N.
  const int dim = 2 * n_max + 1;
  std::vector<vcs::Component> body, soul;
  for (int n = 0; n <= n_max; ++n) body.push_back({n, -0.5 * logf[n], n, n});
  for (int n = 1; n <= n_max; ++n) soul.push_back({n_max + n, -0.5 * logf[n], n, n});

  // |z,zeta><z,zeta| N = sum_kl g_k conj(g_l) x_k x_l^dag with g = (1, zeta);
  // integrating over z turns x_k x_l^dag into the Gram block G_kl.
  std::vector<vcs::Component> all = body;
  all.insert(all.end(), soul.begin(), soul.end());
  const Matrix gram = vcs::frame_from_components(all, dim, family.measure());
  Matrix mask[2] = {Matrix::Zero(dim, dim), Matrix::Zero(dim, dim)};
  for (int i = 0; i < dim; ++i) mask[i <= n_max ? 0 : 1](i, i) = 1.0;

  const GrassmannNumber weight = GrassmannNumber::zeta_bar() * GrassmannNumber::zeta() - GrassmannNumber::scalar(1.0);
  const GrassmannNumber gen[2] = {GrassmannNumber::scalar(1.0), GrassmannNumber::zeta()};
  GrassmannFrame out;
  out.ordering = ordering;
  out.frame = Matrix::Zero(dim, dim);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      const Complex s = berezin(gen[k] * gen[l].conj() * weight, ordering);
      if (s != 0.0) out.frame += s * (mask[k] * gram * mask[l]);
    }

  std::vector<int> idx;
  for (int n = 0; n < n_max; ++n) idx.push_back(n);
  for (int n = 1; n < n_max; ++n) idx.push_back(n_max + n);
  for (int i : idx)
    for (int j : idx) {
      const double delta = i == j ? 1.0 : 0.0;
      const double dev = std::abs(out.frame(i, j) - delta);
      (i <= n_max ? out.body_deviation : out.soul_deviation) =
          std::max(i <= n_max ? out.body_deviation : out.soul_deviation, dev);
      out.minus_identity_deviation = std::max(out.minus_identity_deviation, std::abs(out.frame(i, j) + delta));
    }
  for (int n = 1; n <= n_max; ++n) out.soul_diagonal.push_back(out.frame(n_max + n, n_max + n).real());
  return out;
}

GrassmannResolution grassmann_resolution(const vcs::VcsFamily& family, double tol) {
  GrassmannResolution out{grassmann_frame(family, BerezinOrdering::kBarZetaZeta),
                          grassmann_frame(family, BerezinOrdering::kZetaBarZeta), std::nullopt};
  for (const GrassmannFrame* f : {&out.bar_zeta_zeta, &out.zeta_bar_zeta})
    if (f->body_deviation < tol && f->soul_deviation < tol) out.identity_ordering = f->ordering;
  return out;
}

}  // namespace susyvcs::grassmann
