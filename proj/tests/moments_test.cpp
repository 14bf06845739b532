#include <catch2/catch.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "susyvcs/moments.hpp"

using namespace susyvcs::moments;
using susyvcs::spectra::EnergySequence;

namespace {

std::vector<double> factorials(const EnergySequence& s, int n_max) {
  std::vector<double> out;
  for (int n = 0; n <= n_max; ++n) out.push_back(s.factorial(static_cast<std::size_t>(n)));
  return out;
}

}  // namespace

TEST_CASE("closed-form moments of the built-in measures") {
  CHECK(moment(oscillator_measure(), 3) == Approx(6.0).epsilon(1e-14));
  CHECK(moment(landau_measure(1), 0) == Approx(1.0).epsilon(1e-14));
  CHECK(moment(landau_measure(1), 1) == Approx(0.375).epsilon(1e-14));
  for (int m = 1; m <= 4; ++m)
    for (int n = 0; n <= 20; ++n) {
      const double lhs = moment(landau_measure(m), n) * std::pow(2.0, n + 1) / std::pow(m, 2 * n);
      CHECK(std::abs(lhs - (1.0 + 1.0 / (n + 1))) < 1e-10);
    }
}

TEST_CASE("verify_moments pairs measures with sequences") {
  CHECK(verify_moments(oscillator_measure(), EnergySequence::oscillator(), 10, 1e-10).pass);
  CHECK(verify_moments(landau_measure(2), EnergySequence::landau_bosonic(2), 20, 1e-10).pass);
  const MomentReport wrong = verify_moments(landau_measure(1), EnergySequence::oscillator(), 5, 1e-10);
  CHECK_FALSE(wrong.pass);
  REQUIRE(wrong.first_failure);
  CHECK(*wrong.first_failure == 1);

  // Beyond double range the comparison runs in the log domain.
  const MomentReport big = verify_moments(oscillator_measure(), EnergySequence::oscillator(), 200, 1e-10);
  CHECK(big.pass);
  CHECK(std::isinf(big.rows.back().target));

  std::ostringstream os;
  write_csv(os, verify_moments(landau_measure(1), EnergySequence::landau_bosonic(1), 1, 1e-10));
  const std::string csv = os.str();
  CHECK(csv.rfind("n,computed,target,rel_err\n0,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("adaptive quadrature agrees with closed forms") {
  // Truncated Gaussian density: int_0^R r^(2n+1) e^(-r^2) dr = gamma_lower(n+1, R^2)/2.
  const RadialMeasure g({}, Density{DensityKind::kGaussianRadial, 1.0 / M_PI, {}, {}}, 3.0);
  // gamma_lower(1, 9) = 1 - e^-9, gamma_lower(2, 9) = 1 - 10 e^-9
  CHECK(moment(g, 0) == Approx(1.0 - std::exp(-9.0)).epsilon(1e-12));
  CHECK(moment(g, 1) == Approx(1.0 - 10.0 * std::exp(-9.0)).epsilon(1e-12));
  // A linear table reproduces the linear density exactly.
  const RadialMeasure t({}, Density{DensityKind::kTable, 0.0, {0.0, 0.5, 1.0}, {0.0, 0.5, 1.0}}, 1.0);
  const RadialMeasure lin({}, Density{DensityKind::kLinearRadial, 1.0, {}, {}}, 1.0);
  for (int n = 0; n <= 8; ++n) CHECK(moment(t, n) == Approx(moment(lin, n)).epsilon(1e-12));
  CHECK(log_moment(t, 5) == Approx(std::log(moment(lin, 5))).epsilon(1e-12));
}

TEST_CASE("measure validation and divergence") {
  CHECK_THROWS_AS(RadialMeasure({{1.0, -0.1}}, Density{}, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(RadialMeasure({{3.0, 0.1}}, Density{}, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(RadialMeasure({}, Density{DensityKind::kTable, 0.0, {0.0, 1.0}, {1.0, -1.0}}, 2.0),
                  std::invalid_argument);
  const RadialMeasure unbounded({}, Density{DensityKind::kLinearRadial, 1.0, {}, {}},
                                std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(moment(unbounded, 0), DivergenceError);
  CHECK_THROWS_AS(verify_moments(unbounded, EnergySequence::oscillator(), 2, 1e-10), DivergenceError);
}

TEST_CASE("moments are positive and log-convex") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.05, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Atom> atoms;
    for (int k = 0; k < 3; ++k) atoms.push_back({u(rng), u(rng)});
    const RadialMeasure m(atoms, Density{DensityKind::kLinearRadial, u(rng), {}, {}}, 2.0);
    for (int n = 1; n < 20; ++n) {
      CHECK(log_moment(m, n) > -std::numeric_limits<double>::infinity());
      CHECK(2.0 * log_moment(m, n) <= log_moment(m, n - 1) + log_moment(m, n + 1) + 1e-12);
    }
  }
  for (const RadialMeasure& m : {oscillator_measure(), landau_measure(3)})
    for (int n = 1; n < 20; ++n) CHECK(2.0 * log_moment(m, n) <= log_moment(m, n - 1) + log_moment(m, n + 1) + 1e-12);
}

TEST_CASE("NNLS active set") {
  SECTION("single node reproduces the total mass") {
    Eigen::MatrixXd a(1, 1);
    a << 2.0 * M_PI * 0.5;  // node r = 0.25, width 0.5
    Eigen::VectorXd b(1);
    b << 1.0;
    const NnlsResult r = nnls(a, b);
    CHECK(r.converged);
    CHECK(r.x(0) == Approx(1.0 / M_PI));
    CHECK(r.residual_norm < 1e-15);
  }
  SECTION("clamps negative unconstrained solutions") {
    Eigen::MatrixXd a(3, 2);
    a << 1, 0, 0, 1, 1, 1;
    Eigen::VectorXd b(3);
    b << -1, 2, 1;
    const NnlsResult r = nnls(a, b);
    CHECK(r.x(0) == 0.0);
    CHECK(r.x(1) == Approx(1.5));
  }
  SECTION("KKT conditions on random problems") {
    std::mt19937 rng(17);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::MatrixXd a(6, 9);
      Eigen::VectorXd b(6);
      for (int i = 0; i < 6; ++i) {
        b(i) = g(rng);
        for (int j = 0; j < 9; ++j) a(i, j) = g(rng);
      }
      const NnlsResult r = nnls(a, b);
      CHECK(r.converged);
      const Eigen::VectorXd grad = a.transpose() * (b - a * r.x);
      for (int j = 0; j < 9; ++j) {
        CHECK(r.x(j) >= 0.0);
        CHECK(grad(j) <= 1e-9);
        if (r.x(j) > 0.0) CHECK(std::abs(grad(j)) < 1e-9);
      }
    }
  }
  SECTION("ties enter at the lowest index") {
    Eigen::MatrixXd a(1, 2);
    a << 1, 1;
    Eigen::VectorXd b(1);
    b << 2;
    const NnlsResult r = nnls(a, b);
    CHECK(r.x(0) == Approx(2.0));
    CHECK(r.x(1) == 0.0);
  }
}

TEST_CASE("fit_measure recovers known measures") {
  const FitResult osc = fit_measure(factorials(EnergySequence::oscillator(), 10), midpoint_grid(6.0, 120), false);
  INFO("residual " << osc.relative_residual);
  CHECK(osc.relative_residual < 1e-6);
  for (int n = 0; n <= 10; ++n)
    CHECK(moment(osc.measure, n) == Approx(EnergySequence::oscillator().factorial(n)).epsilon(1e-5));

  const FitResult lan =
      fit_measure(factorials(EnergySequence::landau_bosonic(1), 10), midpoint_grid(1.0 / std::sqrt(2.0), 60), true);
  INFO("atom " << lan.boundary_atom << " residual " << lan.relative_residual);
  CHECK(std::abs(lan.boundary_atom - 1.0 / (4.0 * M_PI)) < 0.05 / (4.0 * M_PI));

  CHECK_THROWS_AS(fit_measure({1.0}, midpoint_grid(1.0, 10), false), std::invalid_argument);
  CHECK_THROWS_AS(fit_measure({1.0, 1.0}, midpoint_grid(1.0, 7), false), std::invalid_argument);
}

TEST_CASE("fit residual does not grow on nested grids") {
  const std::vector<double> t = factorials(EnergySequence::landau_bosonic(2), 8);
  double prev = std::numeric_limits<double>::infinity();
  for (int cells : {9, 27, 81}) {
    const FitResult f = fit_measure(t, midpoint_grid(std::sqrt(2.0), cells), false);
    CHECK(f.relative_residual <= prev * (1.0 + 1e-9) + 1e-14);
    prev = f.relative_residual;
  }
}

TEST_CASE("measure documents round-trip") {
  for (const RadialMeasure& m : {oscillator_measure(), landau_measure(2),
                                 RadialMeasure({}, Density{DensityKind::kTable, 0.0, {0.0, 1.0}, {0.5, 2.0}}, 1.5)}) {
    const RadialMeasure back = measure_from_json(to_json(m));
    CHECK(back.radius() == m.radius());
    CHECK(back.atoms().size() == m.atoms().size());
    CHECK(back.density().kind == m.density().kind);
    CHECK(moment(back, 3) == moment(m, 3));
  }
  CHECK_THROWS_AS(measure_from_json("{\"atoms\": []}"), std::invalid_argument);
  CHECK_THROWS_AS(measure_from_json(R"({"atoms": [], "density": {"kind": "cubic", "params": {}}, "R": 1})"),
                  std::invalid_argument);
}
