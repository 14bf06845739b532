#include "susyvcs/gaussian_rational.hpp"

#include <stdexcept>

namespace susyvcs::weyl {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::fraction(long num, long den, bool imaginary) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return imaginary ? GaussianRational(0, q) : GaussianRational(q, 0);
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t k = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (k == t.size()) return false;
    for (; k < t.size(); ++k)
      if (t[k] < '0' || t[k] > '9') return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!is_int(num) || !is_int(den)) throw std::invalid_argument("malformed rational literal '" + s + "'");
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

GaussianRational GaussianRational::parse(std::string_view re, std::string_view im) {
  return {parse_rational(re), parse_rational(im)};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero Gaussian rational");
  mpq_class den = o.re_ * o.re_ + o.im_ * o.im_;
  mpq_class r = (re_ * o.re_ + im_ * o.im_) / den;
  mpq_class i = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  if (sgn(re_) == 0) return im_.get_str() + "i";
  std::string out = "(" + re_.get_str();
  out += sgn(im_) < 0 ? "" : "+";
  return out + im_.get_str() + "i)";
}

}  // namespace susyvcs::weyl
