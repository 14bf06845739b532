#include <catch2/catch.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "susyvcs/vcs.hpp"

using namespace susyvcs::vcs;
using susyvcs::fock::build_layout;
using susyvcs::moments::landau_measure;
using susyvcs::moments::oscillator_measure;
using susyvcs::spectra::EnergySequence;

namespace {

VcsFamily landau_family(int m, int n, bool extended = false) {
  return VcsFamily(build_layout(EnergySequence::landau_bosonic(m), n, extended), landau_measure(m));
}

double landau1_closed_form(double x) {
  const double u = 2.0 * x;
  return 3.0 + 4.0 * u / (1.0 - u) + 4.0 / u + 4.0 / (u * u) * std::log(1.0 - u);
}

Complex random_point(std::mt19937& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * M_PI * u(rng));
}

}  // namespace

TEST_CASE("normalization series") {
  const VcsFamily osc = oscillator_family(10);
  CHECK(normalization(osc, 0.0) == 1.0);
  CHECK(normalization(osc, 1.0) == Approx(2.0 * M_E - 1.0).epsilon(1e-14));
  CHECK(normalization(osc, 1.0) == Approx(4.436563657).epsilon(1e-9));
  CHECK(normalization(osc, Complex(0.0, 3.0)) == Approx(2.0 * std::exp(9.0) - 1.0).epsilon(1e-13));

  const VcsFamily lan = landau_family(1, 10);
  const double z = std::sqrt(0.25);  // u = 2|z|^2 = 0.5
  CHECK(normalization(lan, z) == Approx(landau1_closed_form(0.25)).epsilon(1e-12));
  for (double x : {0.01, 0.1, 0.3, 0.45, 0.49})
    CHECK(normalization(lan, std::sqrt(x)) == Approx(landau1_closed_form(x)).epsilon(1e-10));
}

TEST_CASE("tail bound dominates the remainder") {
  const EnergySequence osc = EnergySequence::oscillator();
  for (double x : {0.5, 2.0, 8.0})
    for (int n : {5, 10, 20}) {
      double rest = 0.0;
      for (int k = n + 1; k < 400; ++k) rest += std::exp(k * std::log(x) - osc.log_factorial(k));
      const double bound = tail_bound(osc, x, n);
      CHECK(bound >= rest * (1.0 - 1e-12));
      // finite exactly when the ratio x / eps_(n+2) is below 1
      CHECK(std::isfinite(bound) == (x < n + 2));
      if (std::isfinite(bound)) CHECK(bound <= 2.0 * rest);
    }
  const EnergySequence lan = EnergySequence::landau_bosonic(1);
  CHECK(std::isinf(tail_bound(lan, 0.6, 10)));
  CHECK(std::isfinite(tail_bound(lan, 0.4, 10)));
  CHECK(tail_bound(osc, 0.0, 3) == 0.0);
}

TEST_CASE("coefficients and domain") {
  const VcsFamily lan = landau_family(1, 8);
  const CoeffVector c = coeffs(lan, 0.3);
  CHECK(c.fermionic[0].real() == Approx(0.3 / std::sqrt(0.375)).epsilon(1e-14));
  CHECK(c.bosonic[0] == Complex(1.0, 0.0));
  CHECK(c.bosonic.size() == 9);
  CHECK(c.fermionic.size() == 8);
  CHECK_FALSE(c.warning);

  CHECK_THROWS_AS(coeffs(lan, lan.domain_radius()), DomainError);
  CHECK_THROWS_AS(normalization(lan, Complex(0.0, 0.8)), DomainError);
  CHECK(coeffs(lan, 0.69).warning);

  // fermionic coefficients carry the conjugate phase
  const CoeffVector d = coeffs(oscillator_family(6), Complex(0.0, 1.0));
  CHECK(std::abs(d.bosonic[1] - Complex(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(d.fermionic[0] - Complex(0.0, -1.0)) < 1e-15);
}

TEST_CASE("coherent states are normalized and overlaps are consistent") {
  std::mt19937 rng(11);
  const VcsFamily osc = oscillator_family(60);
  const VcsFamily lan = landau_family(2, 60);
  for (int trial = 0; trial < 100; ++trial) {
    const Complex z = random_point(rng, 2.0);
    const CoeffVector c = coeffs(osc, z);
    const double tail = 2.0 * c.tail_bound / c.normalization;
    CHECK(std::abs(c.state(osc.layout()).squaredNorm() - 1.0) <= 1e-12 + tail);
    CHECK(std::abs(overlap(osc, z, z) - 1.0) < 1e-12);

    const Complex w = random_point(rng, 0.9 * lan.domain_radius());
    const CoeffVector cl = coeffs(lan, w);
    CHECK(std::abs(cl.state(lan.layout()).squaredNorm() - 1.0) <= 1e-12 + 2.0 * cl.tail_bound / cl.normalization);
  }
  for (int trial = 0; trial < 50; ++trial) {
    const Complex a = random_point(rng, 2.0), b = random_point(rng, 2.0);
    const Complex ab = overlap(osc, a, b), ba = overlap(osc, b, a);
    CHECK(std::abs(ab - std::conj(ba)) < 1e-13);
    CHECK(std::abs(ab) <= 1.0 + 1e-12);
    // series overlap matches the truncated inner product
    const Complex direct = coeffs(osc, a).state(osc.layout()).dot(coeffs(osc, b).state(osc.layout()));
    CHECK(std::abs(ab - direct) < 1e-12);
  }
  const Complex z(0.7, -1.1);
  CHECK(std::abs(overlap(osc, 0.0, z) - 1.0 / std::sqrt(normalization(osc, z))) < 1e-14);
}

TEST_CASE("frame operator resolves the identity") {
  const FrameReport osc = frame_operator(oscillator_family(40), 30);
  CHECK(osc.deviation < 1e-8);
  const FrameReport lan = frame_operator(landau_family(1, 40), 30);
  CHECK(lan.deviation < 1e-8);
  const FrameReport lan3 = frame_operator(landau_family(3, 25));
  CHECK(lan3.deviation < 1e-8);

  // The frame of a mismatched measure is diagonal with moment/eps! entries.
  const VcsFamily wrong = VcsFamily::unverified(build_layout(EnergySequence::landau_bosonic(1), 6, false),
                                                oscillator_measure());
  const FrameReport w = frame_operator(wrong);
  CHECK(w.bosonic_diagonal[1] - 1.0 == Approx(1.0 / 0.375 - 1.0).epsilon(1e-12));
  CHECK(w.deviation >= 1.0 / 0.375 - 1.0);
  CHECK_THROWS_AS(VcsFamily(build_layout(EnergySequence::landau_bosonic(1), 6, false), oscillator_measure()),
                  std::invalid_argument);
}

TEST_CASE("frame entries respond linearly to moment perturbations") {
  const auto layout = build_layout(EnergySequence::oscillator(), 8, false);
  const auto comps = plain_components(layout);
  std::vector<double> mom;
  for (int n = 0; n <= 8; ++n) mom.push_back(std::tgamma(n + 1.0));
  const Matrix base = frame_from_moments(comps, layout.dim(), mom);
  CHECK(frame_deviation(base, layout, 7) < 1e-14);
  CHECK(std::abs(base(layout.bos(8), layout.bos(8)) - 1.0) < 1e-14);
  CHECK(base(layout.fer(8), layout.fer(8)) == 0.0);  // phi^f_N carries no component
  for (int p = 0; p <= 8; ++p) {
    std::vector<double> bumped = mom;
    const double delta = 1e-3 * mom[p];
    bumped[p] += delta;
    const Matrix diff = frame_from_moments(comps, layout.dim(), bumped) - base;
    CHECK(std::abs(diff(layout.bos(p), layout.bos(p)).real() - 1e-3) < 1e-13);
    if (p >= 1) CHECK(std::abs(diff(layout.fer(p - 1), layout.fer(p - 1)).real() - 1e-3) < 1e-13);
    CHECK(diff.cwiseAbs().sum() == Approx(p == 0 ? 1e-3 : 2e-3).epsilon(1e-9));
  }
}

TEST_CASE("2D quadrature agrees with the angular reduction") {
  for (int n : {2, 5, 10}) {
    for (const VcsFamily& f : {oscillator_family(n), landau_family(1, n), landau_family(2, n)}) {
      const Matrix q = frame_operator_2d(f);
      const Matrix a = frame_operator(f).frame;
      CHECK((q - a).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
  CHECK_THROWS_AS(frame_operator_2d(oscillator_family(11)), std::invalid_argument);
}

TEST_CASE("phase covariance") {
  std::mt19937 rng(5);
  const VcsFamily f = landau_family(2, 20);
  const auto& layout = f.layout();
  for (int trial = 0; trial < 20; ++trial) {
    const Complex z = random_point(rng, 0.9 * f.domain_radius());
    const double phi = std::uniform_real_distribution<double>(0.0, 2.0 * M_PI)(rng);
    const Vector rotated = coeffs(f, z * std::polar(1.0, phi)).state(layout);
    Vector expected = coeffs(f, z).state(layout);
    for (int n = 0; n <= 20; ++n) expected(layout.bos(n)) *= std::polar(1.0, n * phi);
    for (int n = 0; n < 20; ++n) expected(layout.fer(n)) *= std::polar(1.0, -(n + 1) * phi);
    CHECK((rotated - expected).norm() < 1e-12);
  }
}

TEST_CASE("extended frame is the projector orthogonal to (phi^b_0 - chi)") {
  for (const VcsFamily& f : {oscillator_family(20, true), landau_family(1, 20, true)}) {
    const ExtendedFrameReport r = extended_frame(f);
    CHECK(r.projector_residual < 1e-8);
    CHECK(r.span_residual < 1e-8);
    CHECK(r.kernel_residual < 1e-8);
    CHECK(r.identity_deviation == Approx(0.5).epsilon(1e-10));
    CHECK(r.projection_residual > 1e-3);  // P~|z>~ is not a multiple of |z> under this reading
    CHECK(r.literal_projector_residual > 1e-2);
    CHECK(r.literal_projection_residual < 1e-12);
    CHECK(r.literal_norm_ratio_error < 1e-10);
    CHECK(r.literal_norm_at_sample < 1.0);
  }
  CHECK_THROWS_AS(extended_frame(oscillator_family(5)), std::invalid_argument);
}

TEST_CASE("degenerate FQHE frame is block diagonal") {
  for (int k : {1, 3}) {
    const FqheReport r = fqhe_frame(20, k);
    CHECK(r.frame.rows() == 42 * k);
    CHECK(r.deviation < 1e-8);
    CHECK(r.cross_block_max < 1e-12);
  }
  CHECK_THROWS_AS(fqhe_frame(20, 0), std::invalid_argument);
}

TEST_CASE("frame and evaluation outputs") {
  std::ostringstream os;
  write_frame_csv(os, frame_operator(oscillator_family(3)).frame);
  CHECK(os.str().rfind("row,col,value,deviation\n", 0) == 0);
  const std::string json = evaluation_json(oscillator_family(10), Complex(0.5, 0.2));
  CHECK(json.find("\"normalization\"") != std::string::npos);
  CHECK(json.find("\"tail_bound\"") != std::string::npos);
}
