#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace susyvcs::weyl {

/// Exact complex scalar re + i*im with rational parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(mpq_class re, mpq_class im = 0);
  GaussianRational(long re) : GaussianRational(mpq_class(re)) {}
  GaussianRational(int re) : GaussianRational(mpq_class(re)) {}

  static GaussianRational i() { return {0, 1}; }
  static GaussianRational fraction(long num, long den, bool imaginary = false);
  // Parses "p/q" or "p" for each part; throws std::invalid_argument.
  static GaussianRational parse(std::string_view re, std::string_view im);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  GaussianRational conj() const { return {re_, -im_}; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::string to_string() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

// Parses a rational literal "p/q", "p" or "-p/q"; result is canonical.
mpq_class parse_rational(std::string_view text);

}  // namespace susyvcs::weyl
