#include <catch2/catch.hpp>

#include <random>

#include "susyvcs/superpotential.hpp"

using namespace susyvcs::weyl;

namespace {

const GaussianRational kI = GaussianRational::i();
const GaussianRational kHalf = GaussianRational::fraction(1, 2);

WeylElement mono(int a, int b, GaussianRational c = 1) {
  return WeylElement(LaurentPoly::monomial(a, b, c));
}

// Random element: up to 4 terms, derivative orders <= 3 in total, exponents in [-2, 2].
WeylElement random_element(std::mt19937& rng) {
  std::uniform_int_distribution<int> exponent(-2, 2), order(0, 3), coeff(-3, 3), count(1, 4);
  WeylElement out;
  const int terms = count(rng);
  for (int t = 0; t < terms; ++t) {
    int da = order(rng);
    int db = std::uniform_int_distribution<int>(0, 3 - da)(rng);
    GaussianRational c(mpq_class(coeff(rng), 2), mpq_class(coeff(rng), 3));
    out += WeylElement(LaurentPoly::monomial(exponent(rng), exponent(rng), c)) * WeylElement::derivative(da, db);
  }
  return out;
}

}  // namespace

TEST_CASE("Gaussian rational parsing and arithmetic") {
  GaussianRational a = GaussianRational::parse("6/4", "-1/3");
  CHECK(a.re() == mpq_class(3, 2));
  CHECK(a.im() == mpq_class(-1, 3));
  CHECK((a / a) == GaussianRational(1));
  CHECK((kI * kI) == GaussianRational(-1));
  CHECK_THROWS_AS(GaussianRational::parse("1/0", "0"), std::invalid_argument);
  CHECK_THROWS_AS(GaussianRational::parse("x", "0"), std::invalid_argument);
  CHECK_THROWS_AS(GaussianRational(1) / GaussianRational(0), std::domain_error);
}

TEST_CASE("Laurent polynomials differentiate by the power rule") {
  LaurentPoly f = LaurentPoly::monomial(-1, 0, 3) + LaurentPoly::monomial(2, 1);
  CHECK(f.partial_x() == LaurentPoly::monomial(-2, 0, -3) + LaurentPoly::monomial(1, 1, 2));
  CHECK(f.partial_y() == LaurentPoly::monomial(2, 0));
  CHECK(LaurentPoly(GaussianRational(5)).partial_x().is_zero());
  // x - x cancels and leaves no stored zero.
  CHECK((LaurentPoly::x() - LaurentPoly::x()).term_count() == 0);
}

TEST_CASE("multiply applies the Leibniz rule") {
  CHECK(multiply(WeylElement::dx(), WeylElement::x()) == WeylElement::x() * WeylElement::dx() + WeylElement(1));
  CHECK(multiply(WeylElement::px(), WeylElement::x()) - multiply(WeylElement::x(), WeylElement::px()) ==
        WeylElement(-kI));
  // d/dx (1/x) = -1/x^2, so x^-1 dx - dx x^-1 = x^-2.
  const WeylElement inv = mono(-1, 0);
  CHECK(multiply(inv, WeylElement::dx()) - multiply(WeylElement::dx(), inv) == mono(-2, 0));
  CHECK(multiply(WeylElement::derivative(2, 0), WeylElement::x()) ==
        WeylElement::x() * WeylElement::derivative(2, 0) + WeylElement(2) * WeylElement::dx());
}

TEST_CASE("commutators of coordinates and shifted momenta") {
  CHECK(commutator(WeylElement::x(), WeylElement::y()).is_zero());
  const OperatorBundle std_ops = build_operators(builtin::standard());
  CHECK(commutator(std_ops.q, std_ops.p) == WeylElement(kI));

  SuperpotentialSpec generic{LaurentPoly::monomial(1, 2) + LaurentPoly::monomial(0, -1, 2),
                             LaurentPoly::monomial(3, 1, kHalf), "generic"};
  const OperatorBundle o = build_operators(generic);
  const WeylElement expected = GaussianRational(-2) * (WeylElement(kI) * WeylElement(generic.w1.partial_y()));
  CHECK(commutator(o.q_prime, o.p) == expected);
  CHECK(verify_relations(generic).all_hold());
}

TEST_CASE("sqrt(2) scale is tracked exactly") {
  const WeylElement s = WeylElement::x().scaled_sqrt2(-1);
  CHECK(s.sqrt2_exponent() == -1);
  CHECK(s * s == WeylElement(LaurentPoly::monomial(2, 0, kHalf)));
  CHECK(s.scaled_sqrt2(3) == WeylElement(LaurentPoly::monomial(1, 0, 2)));
  CHECK_THROWS_AS(s + WeylElement::x(), std::domain_error);
  CHECK((s - s).is_zero());
}

TEST_CASE("build_operators reproduces the named examples") {
  const OperatorBundle std_ops = build_operators(builtin::standard());
  const WeylElement b = (std_ops.q_prime + WeylElement(kI) * std_ops.p_prime).scaled_sqrt2(-1);
  CHECK(std_ops.e == -b);

  const OperatorBundle c1 = build_operators(builtin::divergence_free());
  CHECK(commutator(c1.k, c1.e) == WeylElement(1));

  const OperatorBundle cp = build_operators(builtin::coupled());
  CHECK(commutator(cp.k, cp.e_dag) == WeylElement(1));
  CHECK(commutator(cp.k, cp.e).is_zero());
  CHECK(commutator(cp.e, cp.e_dag) == WeylElement(1));
  CHECK(commutator(cp.k, cp.k_dag) == WeylElement(1));
}

TEST_CASE("verify_relations holds for every built-in superpotential") {
  for (const auto& spec : builtin::all()) {
    const RelationReport r = verify_relations(spec);
    INFO(spec.label);
    for (const auto& e : r.entries) {
      INFO(e.name << " residual " << e.residual.to_string());
      if (!e.literal_claim) CHECK(e.holds());
    }
    CHECK(r.all_hold());
  }
  // Printed sign of h^b - h^f fails whenever div W != 0: residual is 2 div W.
  const RelationReport std_r = verify_relations(builtin::standard());
  CHECK(std_r.find("h^b - h^f = -div W (as printed)")->residual == WeylElement(-2));
  CHECK(std_r.find("[k,e^dag] = -dxW2 - dyW1 (as printed)")->holds());
  const RelationReport inv_r = verify_relations(builtin::inverse_x(-1));
  CHECK(inv_r.find("[k,e^dag] = -dxW2 - dyW1 (as printed)")->residual == mono(-2, 0, kI));
  CHECK(magnetic_field(builtin::standard()) == LaurentPoly(GaussianRational(1)));
  CHECK(magnetic_field(builtin::divergence_free()).is_zero());
  CHECK(magnetic_field(builtin::coupled()) == LaurentPoly(GaussianRational(1)));

  const OperatorBundle c1 = build_operators(builtin::divergence_free());
  CHECK(commutator(c1.e, c1.e_dag).is_zero());

  // div(kappa/x, 0) = -kappa/x^2, so [e,e^dag] = kappa/x^2 = -1/x^2.
  const OperatorBundle inv = build_operators(builtin::inverse_x(-1));
  CHECK(commutator(inv.e, inv.e_dag) == mono(-2, 0, -1));
}

TEST_CASE("hamiltonians expand to the displayed forms") {
  const HamiltonianSet std_h = hamiltonians(builtin::standard());
  const WeylElement a1 = WeylElement::px() - mono(0, 1, kHalf);
  const WeylElement a2 = WeylElement::py() + mono(1, 0, kHalf);
  CHECK(std_h.h_b == kHalf * (a1 * a1) + kHalf * (a2 * a2) - WeylElement(kHalf));

  const HamiltonianSet c1 = hamiltonians(builtin::divergence_free());
  CHECK(c1.h_b == c1.h_f);

  const HamiltonianSet q = hamiltonians(builtin::quartic());
  const WeylElement px = WeylElement::px();
  const WeylElement py = WeylElement::py();
  const WeylElement expected =
      kHalf * (px * px + py * py + mono(2, 0) * py + mono(4, 0, GaussianRational::fraction(1, 4)) - mono(1, 0));
  CHECK(q.h_b == expected);

  const HamiltonianSet inv = hamiltonians(builtin::inverse_x(-1));
  // kappa = -1: e e^dag has no 1/x^2 term, e^dag e carries (kappa^2 - kappa)/(2x^2) = 1/x^2.
  CHECK(inv.h_f.coefficient(0, 0).coefficient(-2, 0) == GaussianRational(0));
  CHECK(inv.h_b.coefficient(0, 0).coefficient(-2, 0) == GaussianRational(1));
}

TEST_CASE("canonical relations of the standard field") {
  const RelationReport r = canonical_relations();
  for (const auto& e : r.entries) {
    INFO(e.name);
    CHECK(e.holds());
  }
}

TEST_CASE("case 1 identities") {
  const RelationReport r = case1_identities(5);
  CHECK(r.all_hold());
  CHECK(r.find("X+ - X- = 1")->holds());
  CHECK(r.find("e k^1 = k^1 e - 1 k^0")->holds());
  CHECK(r.find("e k^6 = k^6 e - 6 k^5")->holds());
  CHECK(r.find("[a,a^dag] = 1")->holds());
  // The printed a^dag a = H0_down + 1/2 is off by one: the residual is exactly -1.
  const RelationEntry* printed = r.find("a^dag a = H0_down + 1/2 (as printed)");
  REQUIRE(printed != nullptr);
  CHECK(printed->literal_claim);
  CHECK(printed->residual == WeylElement(-1));
  CHECK_THROWS_AS(case1_identities(0), std::invalid_argument);
}

TEST_CASE("separable superpotentials decouple e from k") {
  for (const auto& spec : {builtin::inverse_x(-1), builtin::standard(), builtin::quartic()}) {
    const RelationReport r = separable_commutation(spec);
    CHECK(r.all_hold());
  }
  // The vanishing of [k,e^dag] holds for the standard field only.
  CHECK(separable_commutation(builtin::standard()).find("[k,e^dag] = 0 (as claimed)")->holds());
  const RelationReport inv = separable_commutation(builtin::inverse_x(-1));
  CHECK(inv.find("[k,e] = 0")->holds());
  CHECK(inv.find("[k,e^dag] = 0 (as claimed)")->residual == mono(-2, 0, kI));
  CHECK_THROWS_AS(separable_commutation(builtin::coupled()), std::invalid_argument);
}

TEST_CASE("normal form is associative and satisfies Jacobi") {
  std::mt19937 rng(20261019);
  for (int trial = 0; trial < 25; ++trial) {
    const WeylElement a = random_element(rng);
    const WeylElement b = random_element(rng);
    const WeylElement c = random_element(rng);
    CHECK((a * b) * c == a * (b * c));
    const WeylElement jacobi =
        commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b));
    CHECK(jacobi.is_zero());
    CHECK(commutator(a, b) == -commutator(b, a));
  }
}

TEST_CASE("formal adjoint is an involutive antihomomorphism") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const WeylElement a = random_element(rng);
    const WeylElement b = random_element(rng);
    CHECK(a.adjoint().adjoint() == a);
    CHECK((a * b).adjoint() == b.adjoint() * a.adjoint());
  }
  CHECK(WeylElement::px().adjoint() == WeylElement::px());
}

TEST_CASE("apply_at evaluates an operator on a plane wave") {
  const double kx = 1.7;
  DerivativeOracle wave = [&](int a, int b, double x, double) {
    if (b > 0) return std::complex<double>(0.0);
    return std::pow(std::complex<double>(0.0, kx), a) * std::exp(std::complex<double>(0.0, kx * x));
  };
  const auto v = apply_at(WeylElement::px(), wave, 0.3, 0.0);
  const auto expected = kx * std::exp(std::complex<double>(0.0, kx * 0.3));
  CHECK(std::abs(v - expected) < 1e-14);
  const auto scaled = apply_at(WeylElement::px().scaled_sqrt2(-1), wave, 0.3, 0.0);
  CHECK(std::abs(scaled - expected / std::sqrt(2.0)) < 1e-14);
}
