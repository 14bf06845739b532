#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>

#include "susyvcs/laurent_poly.hpp"

namespace susyvcs::weyl {

/// Multi-index (a, b) of the derivative d^a/dx^a d^b/dy^b.
struct DerivIndex {
  int a = 0;
  int b = 0;
  auto operator<=>(const DerivIndex&) const = default;
};

/// Differential operator sum f_ab(x, y) dx^a dy^b in normal form (all
/// derivatives to the right), scaled by 2^(s/2).
///
/// The exponent s is kept canonical in {0, -1}: even powers of sqrt(2) are
/// absorbed into the rational coefficients, so equality of two elements is
/// equality of (s, term map). Elements whose scale exponents have opposite
/// parity cannot be added exactly; attempting it throws std::domain_error.
class WeylElement {
 public:
  using Terms = std::map<DerivIndex, LaurentPoly>;

  WeylElement() = default;
  WeylElement(LaurentPoly multiplier);
  WeylElement(GaussianRational c) : WeylElement(LaurentPoly(c)) {}
  WeylElement(int c) : WeylElement(LaurentPoly(GaussianRational(c))) {}

  static WeylElement derivative(int a, int b);
  static WeylElement x() { return WeylElement(LaurentPoly::x()); }
  static WeylElement y() { return WeylElement(LaurentPoly::y()); }
  static WeylElement dx() { return derivative(1, 0); }
  static WeylElement dy() { return derivative(0, 1); }
  static WeylElement px();  // -i dx
  static WeylElement py();  // -i dy

  const Terms& terms() const { return terms_; }
  int sqrt2_exponent() const { return sqrt2_exp_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const;
  // The coefficient of dx^a dy^b, with the sqrt(2) scale *not* applied.
  LaurentPoly coefficient(int a, int b) const;
  // True when the element is a multiplication operator with rational scale.
  bool is_multiplier() const;

  // Multiplies by 2^(k/2).
  WeylElement scaled_sqrt2(int k) const;
  WeylElement adjoint() const;

  WeylElement operator-() const;
  WeylElement& operator+=(const WeylElement& o);
  WeylElement& operator-=(const WeylElement& o);
  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);
  friend WeylElement operator*(const GaussianRational& c, const WeylElement& a);
  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.sqrt2_exp_ == b.sqrt2_exp_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  void add_term(DerivIndex d, const LaurentPoly& f);
  void canonicalize_scale(int s);

  Terms terms_;
  int sqrt2_exp_ = 0;
};

WeylElement multiply(const WeylElement& a, const WeylElement& b);
WeylElement commutator(const WeylElement& a, const WeylElement& b);
WeylElement anticommutator(const WeylElement& a, const WeylElement& b);
WeylElement power(const WeylElement& a, int n);

/// Returns d^a/dx^a d^b/dy^b of a test function at (x, y).
using DerivativeOracle = std::function<std::complex<double>(int a, int b, double x, double y)>;

/// Applies the operator to a function known through its derivatives.
std::complex<double> apply_at(const WeylElement& op, const DerivativeOracle& f, double x, double y);

}  // namespace susyvcs::weyl
