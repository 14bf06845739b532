#pragma once

#include <compare>
#include <complex>
#include <map>
#include <string>

#include "susyvcs/gaussian_rational.hpp"

namespace susyvcs::weyl {

/// Exponent pair (a, b) of the monomial x^a y^b; negative entries allowed.
struct Exponent {
  int a = 0;
  int b = 0;
  auto operator<=>(const Exponent&) const = default;
};

/// Laurent polynomial sum c_ab x^a y^b over Gaussian rationals.
/// Zero coefficients are never stored, so the term map is a normal form.
class LaurentPoly {
 public:
  using Terms = std::map<Exponent, GaussianRational>;

  LaurentPoly() = default;
  LaurentPoly(GaussianRational c);  // constant
  static LaurentPoly monomial(int a, int b, GaussianRational c = 1);
  static LaurentPoly x() { return monomial(1, 0); }
  static LaurentPoly y() { return monomial(0, 1); }

  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  GaussianRational coefficient(int a, int b) const;

  // Adds c x^a y^b, dropping the entry if it cancels.
  void add_term(Exponent e, const GaussianRational& c);

  LaurentPoly partial_x() const;
  LaurentPoly partial_y() const;
  LaurentPoly partial(int order_x, int order_y) const;
  LaurentPoly conj() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const GaussianRational& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const GaussianRational& c) { return a *= c; }
  friend LaurentPoly operator*(const GaussianRational& c, LaurentPoly a) { return a *= c; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  std::complex<double> eval(double x, double y) const;
  std::string to_string() const;

 private:
  Terms terms_;
};

}  // namespace susyvcs::weyl
