#include "susyvcs/laurent_poly.hpp"

#include <cmath>

namespace susyvcs::weyl {

LaurentPoly::LaurentPoly(GaussianRational c) {
  add_term({0, 0}, c);
}

LaurentPoly LaurentPoly::monomial(int a, int b, GaussianRational c) {
  LaurentPoly p;
  p.add_term({a, b}, c);
  return p;
}

GaussianRational LaurentPoly::coefficient(int a, int b) const {
  auto it = terms_.find({a, b});
  return it == terms_.end() ? GaussianRational{} : it->second;
}

void LaurentPoly::add_term(Exponent e, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::partial_x() const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_)
    if (e.a != 0) out.add_term({e.a - 1, e.b}, c * GaussianRational(e.a));
  return out;
}

LaurentPoly LaurentPoly::partial_y() const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_)
    if (e.b != 0) out.add_term({e.a, e.b - 1}, c * GaussianRational(e.b));
  return out;
}

LaurentPoly LaurentPoly::partial(int order_x, int order_y) const {
  LaurentPoly out = *this;
  for (int k = 0; k < order_x; ++k) out = out.partial_x();
  for (int k = 0; k < order_y; ++k) out = out.partial_y();
  return out;
}

LaurentPoly LaurentPoly::conj() const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, c.conj());
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term({ea.a + eb.a, ea.b + eb.b}, ca * cb);
  return out;
}

std::complex<double> LaurentPoly::eval(double x, double y) const {
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : terms_) sum += c.to_complex() * std::pow(x, e.a) * std::pow(y, e.b);
  return sum;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.to_string();
    if (e.a != 0) out += "*x^" + std::to_string(e.a);
    if (e.b != 0) out += "*y^" + std::to_string(e.b);
  }
  return out;
}

}  // namespace susyvcs::weyl
