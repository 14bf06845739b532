#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace susyvcs::spectra {

enum class SequenceKind { kOscillator, kLandauBosonic, kLandauFermionic, kTable };

/// Eigenvalue sequence eps_n of a SUSY partner pair together with its
/// generalized factorial eps_n! = eps_1 ... eps_n (eps_0! = 1).
///
/// Landau kinds carry m exactly and evaluate in rational arithmetic; doubles
/// are produced only at the accessors that return them.
class EnergySequence {
 public:
  static EnergySequence oscillator();
  // (m^2/2)(1 - 1/(n+1)^2); m >= 1.
  static EnergySequence landau_bosonic(int m);
  // (m^2/2)(1 - 1/(n+2)^2); m >= 1.
  static EnergySequence landau_fermionic(int m);
  // Values must be finite and non-negative.
  static EnergySequence table(std::vector<double> values);

  SequenceKind kind() const { return kind_; }
  int m() const { return m_; }
  const std::vector<double>& values() const { return values_; }
  std::string name() const;

  // Number of available terms; nullopt for the infinite kinds.
  std::optional<std::size_t> size() const;
  // lim eps_n; +inf for the oscillator, m^2/2 for Landau kinds, last entry for tables.
  double limit() const;

  // Throws std::out_of_range past the end of a table.
  double eps(std::size_t n) const;
  std::optional<mpq_class> eps_exact(std::size_t n) const;

  double factorial(std::size_t n) const;
  double log_factorial(std::size_t n) const;
  std::optional<mpq_class> factorial_exact(std::size_t n) const;
  // log eps_k! for k = 0..n_max in one pass.
  std::vector<double> log_factorials(std::size_t n_max) const;

 private:
  EnergySequence(SequenceKind kind, int m, std::vector<double> values)
      : kind_(kind), m_(m), values_(std::move(values)) {}

  SequenceKind kind_;
  int m_ = 0;
  std::vector<double> values_;
};

/// Table sequence from a JSON file holding either an array of values or an
/// object with a "values" array. Throws std::invalid_argument on bad content.
EnergySequence load_table(const std::string& path);
EnergySequence table_from_json_text(const std::string& text);

/// m^(2n) / 2^(n+1) * (1 + 1/(n+1)), the closed form of the bosonic Landau factorial.
mpq_class landau_factorial_closed_form(int m, std::size_t n);

struct PartnerReport {
  int m = 0;
  std::size_t n_max = 0;
  std::vector<std::size_t> mismatches;  // n with eps^f_n != eps^b_(n+1)
  bool pass() const { return mismatches.empty(); }
};

/// Exact check of eps^f_n = eps^b_(n+1) for n <= n_max.
PartnerReport partner_consistency(int m, std::size_t n_max);

/// The printed closed form 2^(n+1)/m^(2n) [1 - 1/(n+2)] is the reciprocal of
/// eps_n!. Returns, for each n <= n_max, whether printed * eps_n! == 1 exactly.
std::vector<bool> printed_factorial_is_reciprocal(int m, std::size_t n_max);

/// Ground-state profiles of a 1D superpotential: phi_b = exp(-sqrt2 int_0^x W),
/// chi = exp(+sqrt2 int_0^x W) (hbar = mass = 1).
struct GroundStateProfile {
  std::vector<double> grid;
  std::vector<double> phi_b;
  std::vector<double> chi;
  std::vector<double> log_phi_b;
  // Squared norms on the sample range; may be +inf.
  double phi_b_norm2 = 0.0;
  double chi_norm2 = 0.0;
  // log of the squared norm over [-R, R] for R = R0, 2R0, ..., 16R0.
  std::vector<double> phi_b_log_norm2_growth;
  std::vector<double> chi_log_norm2_growth;
  bool phi_b_normalizable = false;
  bool chi_normalizable = false;
  // False only if both profiles pass the normalizability test.
  bool chi_divergent_when_phi_normalizable = true;
  // Step used for the cumulative Simpson rule after refinement.
  double quadrature_step = 0.0;
};

GroundStateProfile ground_state_profiles(const std::function<double(double)>& w, double x_min, double x_max,
                                         std::size_t samples);

}  // namespace susyvcs::spectra
