#include "susyvcs/weyl_element.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace susyvcs::weyl {
namespace {

mpz_class binomial(int n, int k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

GaussianRational pow2(int k) {
  mpq_class q(1);
  if (k >= 0)
    q = mpq_class(mpz_class(1) << k);
  else
    q = mpq_class(mpz_class(1), mpz_class(1) << -k);
  q.canonicalize();
  return {q};
}

}  // namespace

WeylElement::WeylElement(LaurentPoly multiplier) {
  add_term({0, 0}, multiplier);
}

WeylElement WeylElement::derivative(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("negative derivative order");
  WeylElement out;
  out.add_term({a, b}, LaurentPoly(GaussianRational(1)));
  return out;
}

WeylElement WeylElement::px() {
  return -GaussianRational::i() * dx();
}

WeylElement WeylElement::py() {
  return -GaussianRational::i() * dy();
}

std::size_t WeylElement::term_count() const {
  std::size_t n = 0;
  for (const auto& [d, f] : terms_) n += f.term_count();
  return n;
}

LaurentPoly WeylElement::coefficient(int a, int b) const {
  auto it = terms_.find({a, b});
  return it == terms_.end() ? LaurentPoly{} : it->second;
}

bool WeylElement::is_multiplier() const {
  if (sqrt2_exp_ != 0) return false;
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == DerivIndex{0, 0});
}

void WeylElement::add_term(DerivIndex d, const LaurentPoly& f) {
  if (f.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(d, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void WeylElement::canonicalize_scale(int s) {
  if (terms_.empty()) {
    sqrt2_exp_ = 0;
    return;
  }
  // value = 2^(s/2) X; fold the even part of s into X.
  const int target = (s % 2 == 0) ? 0 : -1;
  const GaussianRational factor = pow2((s - target) / 2);
  if (!(factor == GaussianRational(1)))
    for (auto& [d, f] : terms_) f *= factor;
  sqrt2_exp_ = target;
}

WeylElement WeylElement::scaled_sqrt2(int k) const {
  WeylElement out = *this;
  out.canonicalize_scale(sqrt2_exp_ + k);
  return out;
}

WeylElement WeylElement::operator-() const {
  WeylElement out = *this;
  for (auto& [d, f] : out.terms_) f = -f;
  return out;
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  if (sqrt2_exp_ != o.sqrt2_exp_)
    throw std::domain_error("cannot add Weyl elements whose sqrt(2) scales differ in parity");
  for (const auto& [d, f] : o.terms_) add_term(d, f);
  if (terms_.empty()) sqrt2_exp_ = 0;
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
  return *this += -o;
}

WeylElement operator*(const GaussianRational& c, const WeylElement& a) {
  WeylElement out;
  if (c.is_zero()) return out;
  for (const auto& [d, f] : a.terms_) out.add_term(d, f * c);
  out.sqrt2_exp_ = out.terms_.empty() ? 0 : a.sqrt2_exp_;
  return out;
}

// (f d^alpha)(g d^beta) = f sum_{gamma <= alpha} C(alpha, gamma) (d^gamma g) d^(alpha - gamma + beta)
WeylElement operator*(const WeylElement& a, const WeylElement& b) {
  WeylElement out;
  for (const auto& [da, fa] : a.terms_) {
    for (const auto& [db, gb] : b.terms_) {
      for (int i = 0; i <= da.a; ++i) {
        LaurentPoly gx = gb.partial(i, 0);
        if (gx.is_zero()) break;
        for (int j = 0; j <= da.b; ++j) {
          LaurentPoly g = gx.partial(0, j);
          if (g.is_zero()) break;
          GaussianRational c(mpq_class(binomial(da.a, i) * binomial(da.b, j)));
          out.add_term({da.a - i + db.a, da.b - j + db.b}, (fa * g) * c);
        }
      }
    }
  }
  out.canonicalize_scale(a.sqrt2_exp_ + b.sqrt2_exp_);
  return out;
}

// (f dx^a dy^b)^dagger = (-1)^(a+b) dx^a dy^b conj(f)
WeylElement WeylElement::adjoint() const {
  WeylElement out;
  for (const auto& [d, f] : terms_) {
    WeylElement term = derivative(d.a, d.b) * WeylElement(f.conj());
    if ((d.a + d.b) % 2 != 0) term = -term;
    out += term;
  }
  out.canonicalize_scale(out.is_zero() ? 0 : sqrt2_exp_);
  return out;
}

std::string WeylElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  if (sqrt2_exp_ != 0) out += "2^(" + std::to_string(sqrt2_exp_) + "/2) * [";
  bool first = true;
  for (const auto& [d, f] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += "(" + f.to_string() + ")";
    if (d.a) out += "*dx^" + std::to_string(d.a);
    if (d.b) out += "*dy^" + std::to_string(d.b);
  }
  if (sqrt2_exp_ != 0) out += "]";
  return out;
}

WeylElement multiply(const WeylElement& a, const WeylElement& b) {
  return a * b;
}

WeylElement commutator(const WeylElement& a, const WeylElement& b) {
  return a * b - b * a;
}

WeylElement anticommutator(const WeylElement& a, const WeylElement& b) {
  return a * b + b * a;
}

WeylElement power(const WeylElement& a, int n) {
  if (n < 0) throw std::invalid_argument("negative operator power");
  WeylElement out(1);
  for (int k = 0; k < n; ++k) out = out * a;
  return out;
}

std::complex<double> apply_at(const WeylElement& op, const DerivativeOracle& f, double x, double y) {
  std::complex<double> sum = 0.0;
  for (const auto& [d, coeff] : op.terms()) sum += coeff.eval(x, y) * f(d.a, d.b, x, y);
  return sum * std::pow(2.0, 0.5 * op.sqrt2_exponent());
}

}  // namespace susyvcs::weyl
