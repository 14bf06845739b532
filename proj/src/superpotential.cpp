#include "susyvcs/superpotential.hpp"

#include <stdexcept>

namespace susyvcs::weyl {
namespace {

const GaussianRational kI = GaussianRational::i();
const GaussianRational kHalf = GaussianRational::fraction(1, 2);

WeylElement mul(const LaurentPoly& f) {
  return WeylElement(f);
}

void add(RelationReport& r, std::string name, WeylElement residual, bool literal = false, std::string note = {}) {
  r.entries.push_back({std::move(name), std::move(residual), literal, std::move(note)});
}

}  // namespace

bool SuperpotentialSpec::is_separable() const {
  for (const auto& [e, c] : w1.terms())
    if (e.b != 0) return false;
  for (const auto& [e, c] : w2.terms())
    if (e.a != 0) return false;
  return true;
}

namespace builtin {

SuperpotentialSpec standard() {
  return {LaurentPoly::monomial(1, 0, -kHalf), LaurentPoly::monomial(0, 1, -kHalf), "standard"};
}

SuperpotentialSpec divergence_free() {
  return {LaurentPoly::monomial(0, 1, -kHalf), LaurentPoly::monomial(1, 0, kHalf), "divergence-free"};
}

SuperpotentialSpec coupled() {
  LaurentPoly w = LaurentPoly::monomial(1, 0, -kHalf) + LaurentPoly::monomial(0, 1, -kHalf);
  return {w, w, "coupled"};
}

SuperpotentialSpec inverse_x(long kappa) {
  return {LaurentPoly::monomial(-1, 0, GaussianRational(kappa)), LaurentPoly{},
          "inverse-x(kappa=" + std::to_string(kappa) + ")"};
}

SuperpotentialSpec quartic() {
  return {LaurentPoly::monomial(2, 0, -kHalf), LaurentPoly{}, "quartic"};
}

std::vector<SuperpotentialSpec> all() {
  return {standard(), divergence_free(), coupled(), inverse_x(-1), quartic()};
}

}  // namespace builtin

OperatorBundle build_operators(const SuperpotentialSpec& spec) {
  const WeylElement px = WeylElement::px();
  const WeylElement py = WeylElement::py();
  const WeylElement w1 = mul(spec.w1);
  const WeylElement w2 = mul(spec.w2);

  OperatorBundle ops;
  ops.p_prime = px + w2;
  ops.q_prime = py - w1;
  ops.p = py + w1;
  ops.q = px - w2;
  // e = -(q' + i p')/sqrt2, k = -(q + i p)/sqrt2 and their adjoints.
  ops.e = (-(ops.q_prime + kI * ops.p_prime)).scaled_sqrt2(-1);
  ops.e_dag = (-(ops.q_prime - kI * ops.p_prime)).scaled_sqrt2(-1);
  ops.k = (-(ops.q + kI * ops.p)).scaled_sqrt2(-1);
  ops.k_dag = (-(ops.q - kI * ops.p)).scaled_sqrt2(-1);
  return ops;
}

HamiltonianSet hamiltonians(const SuperpotentialSpec& spec) {
  const OperatorBundle ops = build_operators(spec);
  return {ops.e_dag * ops.e, ops.e * ops.e_dag, ops.k_dag * ops.k, ops.k * ops.k_dag};
}

LaurentPoly magnetic_field(const SuperpotentialSpec& spec) {
  return -spec.divergence();
}

bool RelationReport::all_hold() const {
  for (const auto& e : entries)
    if (!e.literal_claim && !e.holds()) return false;
  return true;
}

const RelationEntry* RelationReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

RelationReport verify_relations(const SuperpotentialSpec& spec) {
  const OperatorBundle o = build_operators(spec);
  const HamiltonianSet h = hamiltonians(spec);
  const WeylElement div = mul(spec.divergence());
  const WeylElement dxw1 = mul(spec.w1.partial_x());
  const WeylElement dyw1 = mul(spec.w1.partial_y());
  const WeylElement dxw2 = mul(spec.w2.partial_x());
  const WeylElement dyw2 = mul(spec.w2.partial_y());
  const WeylElement i(kI);

  RelationReport r{spec.label, {}};
  add(r, "[x,p_x] = i", commutator(WeylElement::x(), WeylElement::px()) - i);
  add(r, "[y,p_y] = i", commutator(WeylElement::y(), WeylElement::py()) - i);
  add(r, "[x,y] = 0", commutator(WeylElement::x(), WeylElement::y()));
  add(r, "[p_x,p_y] = 0", commutator(WeylElement::px(), WeylElement::py()));
  add(r, "[x,p_y] = 0", commutator(WeylElement::x(), WeylElement::py()));

  add(r, "[q,p] = -i div W", commutator(o.q, o.p) + i * div);
  add(r, "[q',p'] = -i div W", commutator(o.q_prime, o.p_prime) + i * div);
  add(r, "[p',p] = -i dxW1 + i dyW2", commutator(o.p_prime, o.p) - (-(i * dxw1) + i * dyw2));
  add(r, "[q',q] = -i dxW1 + i dyW2", commutator(o.q_prime, o.q) - (-(i * dxw1) + i * dyw2));
  add(r, "[q',p] = -2i dyW1", commutator(o.q_prime, o.p) + GaussianRational(2) * (i * dyw1));
  add(r, "[p',q] = 2i dxW2", commutator(o.p_prime, o.q) - GaussianRational(2) * (i * dxw2));

  add(r, "e^dag = adjoint(e)", o.e.adjoint() - o.e_dag);
  add(r, "k^dag = adjoint(k)", o.k.adjoint() - o.k_dag);

  add(r, "[e,e^dag] = -div W", commutator(o.e, o.e_dag) + div);
  add(r, "[k,k^dag] = -div W", commutator(o.k, o.k_dag) + div);
  add(r, "[k,e] = dxW2 - dyW1", commutator(o.k, o.e) - (dxw2 - dyw1));
  add(r, "[k,e^dag] = -dxW2 - dyW1 + i(dxW1 - dyW2)",
      commutator(o.k, o.e_dag) - (-dxw2 - dyw1 + i * (dxw1 - dyw2)));
  add(r, "[k,e^dag] = -dxW2 - dyW1 (as printed)", commutator(o.k, o.e_dag) - (-dxw2 - dyw1), true,
      "the printed form drops i(dxW1 - dyW2), which vanishes only when dxW1 = dyW2");

  add(r, "h^b - h^f = frak_h^b - frak_h^f", (h.h_b - h.h_f) - (h.frak_h_b - h.frak_h_f));
  add(r, "h^b - h^f = div W", h.h_b - h.h_f - div);
  add(r, "frak_h^b - frak_h^f = div W", h.frak_h_b - h.frak_h_f - div);
  add(r, "h^b - h^f = -div W (as printed)", h.h_b - h.h_f + div, true,
      "sign error in the printed relation; [e,e^dag] = -div W forces h^b - h^f = +div W");

  const WeylElement pi_x = o.p_prime;  // p_x + W2
  const WeylElement pi_y = o.q_prime;  // p_y - W1
  const WeylElement kinetic = kHalf * (pi_x * pi_x) + kHalf * (pi_y * pi_y);
  add(r, "h^b = (p_x+W2)^2/2 + (p_y-W1)^2/2 + div W/2", h.h_b - (kinetic + kHalf * div));
  add(r, "h^f = (p_x+W2)^2/2 + (p_y-W1)^2/2 - div W/2", h.h_f - (kinetic - kHalf * div));
  return r;
}

RelationReport canonical_relations() {
  const OperatorBundle o = build_operators(builtin::standard());
  // Capital letters of the standard field: Q = q, P = p, Q' = q', P' = p'.
  const WeylElement i(kI);
  RelationReport r{"standard canonical", {}};
  add(r, "[Q,P] = i", commutator(o.q, o.p) - i);
  add(r, "[Q',P'] = i", commutator(o.q_prime, o.p_prime) - i);
  add(r, "[Q,P'] = 0", commutator(o.q, o.p_prime));
  add(r, "[Q',P] = 0", commutator(o.q_prime, o.p));
  add(r, "[Q,Q'] = 0", commutator(o.q, o.q_prime));
  add(r, "[P,P'] = 0", commutator(o.p, o.p_prime));

  // B = (Q' + iP')/sqrt2 and E = -B.
  const WeylElement b = (o.q_prime + i * o.p_prime).scaled_sqrt2(-1);
  const WeylElement b_dag = (o.q_prime - i * o.p_prime).scaled_sqrt2(-1);
  add(r, "E = -B", o.e + b);
  add(r, "[B,B^dag] = 1", commutator(b, b_dag) - WeylElement(1));

  const WeylElement px = WeylElement::px();
  const WeylElement py = WeylElement::py();
  const WeylElement half_x = mul(LaurentPoly::monomial(1, 0, kHalf));
  const WeylElement half_y = mul(LaurentPoly::monomial(0, 1, kHalf));
  const WeylElement a1 = px - half_y;
  const WeylElement a2 = py + half_x;
  const WeylElement h0 = kHalf * (a1 * a1) + kHalf * (a2 * a2);
  const HamiltonianSet h = hamiltonians(builtin::standard());
  add(r, "H^b = H_0 - 1/2", h.h_b - (h0 - WeylElement(kHalf)));
  add(r, "H^f = H_0 + 1/2", h.h_f - (h0 + WeylElement(kHalf)));
  add(r, "H_0 = (Q'^2 + P'^2)/2", h0 - (kHalf * (o.q_prime * o.q_prime) + kHalf * (o.p_prime * o.p_prime)));
  return r;
}

RelationReport case1_identities(int n_max) {
  if (n_max < 1) throw std::invalid_argument("case1_identities requires n_max >= 1");
  const SuperpotentialSpec spec = builtin::divergence_free();
  const OperatorBundle o = build_operators(spec);
  const HamiltonianSet h = hamiltonians(spec);
  const WeylElement i(kI);
  const WeylElement one(1);

  RelationReport r{spec.label, {}};
  add(r, "h^b = h^f", h.h_b - h.h_f);
  add(r, "[e,e^dag] = 0", commutator(o.e, o.e_dag));
  add(r, "[k,k^dag] = 0", commutator(o.k, o.k_dag));
  add(r, "[k,e^dag] = 0", commutator(o.k, o.e_dag));
  add(r, "[k,e] = 1", commutator(o.k, o.e) - one);

  const WeylElement x_plus = o.k * o.e;
  const WeylElement x_minus = o.e * o.k;
  add(r, "X+ - X- = 1", x_plus - x_minus - one);

  for (int n = 0; n <= n_max; ++n) {
    const WeylElement kn = power(o.k, n);
    const WeylElement kn1 = kn * o.k;
    const WeylElement en = power(o.e, n);
    const WeylElement en1 = en * o.e;
    const GaussianRational c(n + 1);
    add(r, "e k^" + std::to_string(n + 1) + " = k^" + std::to_string(n + 1) + " e - " + std::to_string(n + 1) + " k^" +
               std::to_string(n),
        o.e * kn1 - (kn1 * o.e - c * kn));
    add(r, "k e^" + std::to_string(n + 1) + " = e^" + std::to_string(n + 1) + " k + " + std::to_string(n + 1) + " e^" +
               std::to_string(n),
        o.k * en1 - (en1 * o.k + c * en));
  }

  // (i/2){(p_x - iy/2)^2 + (p_y + ix/2)^2}
  const WeylElement u = WeylElement::px() - mul(LaurentPoly::monomial(0, 1, kI * kHalf));
  const WeylElement v = WeylElement::py() + mul(LaurentPoly::monomial(1, 0, kI * kHalf));
  const WeylElement complex_field = (kI * kHalf) * (u * u + v * v);
  add(r, "X+ - 1/2 = (i/2){(p_x - iy/2)^2 + (p_y + ix/2)^2}", x_plus - WeylElement(kHalf) - complex_field);
  add(r, "X- + 1/2 = (i/2){(p_x - iy/2)^2 + (p_y + ix/2)^2}", x_minus + WeylElement(kHalf) - complex_field);

  const WeylElement a = (o.k + o.e_dag).scaled_sqrt2(-1);
  const WeylElement a_dag = (o.k_dag + o.e).scaled_sqrt2(-1);
  add(r, "a^dag = adjoint(a)", a.adjoint() - a_dag);
  add(r, "[a,a^dag] = 1", commutator(a, a_dag) - one);

  // H0 with the reversed field: (p_x + y/2)^2/2 + (p_y - x/2)^2/2.
  const WeylElement b1 = WeylElement::px() + mul(LaurentPoly::monomial(0, 1, kHalf));
  const WeylElement b2 = WeylElement::py() - mul(LaurentPoly::monomial(1, 0, kHalf));
  const WeylElement h0_down = kHalf * (b1 * b1) + kHalf * (b2 * b2);
  add(r, "a^dag a = H0_down - 1/2", a_dag * a - (h0_down - WeylElement(kHalf)));
  add(r, "a a^dag = H0_down + 1/2", a * a_dag - (h0_down + WeylElement(kHalf)));
  add(r, "a^dag a = H0_down + 1/2 (as printed)", a_dag * a - (h0_down + WeylElement(kHalf)), true,
      "exact normal ordering gives a^dag a = H0_down - 1/2; the printed +1/2 belongs to a a^dag");
  return r;
}

RelationReport separable_commutation(const SuperpotentialSpec& spec) {
  if (!spec.is_separable())
    throw std::invalid_argument("superpotential '" + spec.label + "' is not of the form (W1(x), W2(y))");
  const OperatorBundle o = build_operators(spec);
  const WeylElement i(kI);
  const WeylElement gap = i * WeylElement(spec.w1.partial_x() - spec.w2.partial_y());
  RelationReport r{spec.label, {}};
  add(r, "[k,e] = 0", commutator(o.k, o.e));
  add(r, "[k^dag,e^dag] = 0", commutator(o.k_dag, o.e_dag));
  add(r, "[k,e^dag] = i(dxW1 - dyW2)", commutator(o.k, o.e_dag) - gap);
  add(r, "[k^dag,e] = i(dxW1 - dyW2)", commutator(o.k_dag, o.e) - gap);
  add(r, "[k,e^dag] = 0 (as claimed)", commutator(o.k, o.e_dag), true,
      "holds only when dxW1 = dyW2; for (kappa/x, 0) the commutator is -i kappa/x^2");
  return r;
}

}  // namespace susyvcs::weyl
