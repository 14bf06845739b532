#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "susyvcs/energy_sequence.hpp"

namespace susyvcs::fock {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Basis order: phi^b_0..phi^b_N, phi^f_0..phi^f_N, then chi when extended.
class SpaceLayout {
 public:
  // Throws std::invalid_argument for N < 2.
  SpaceLayout(spectra::EnergySequence seq, int n, bool extended);

  const spectra::EnergySequence& sequence() const { return seq_; }
  int truncation() const { return n_; }
  bool extended() const { return extended_; }

  int sector_dim() const { return n_ + 1; }
  int susy_dim() const { return 2 * (n_ + 1); }
  int dim() const { return susy_dim() + (extended_ ? 1 : 0); }

  int bos(int k) const { return k; }
  int fer(int k) const { return n_ + 1 + k; }
  // Throws std::logic_error on a non-extended layout.
  int chi() const;

  // Rows/columns touched by truncation: the top level of each sector.
  std::vector<int> edge_band() const { return {bos(n_), fer(n_)}; }
  double eps(int k) const { return seq_.eps(static_cast<std::size_t>(k)); }

 private:
  spectra::EnergySequence seq_;
  int n_;
  bool extended_;
};

SpaceLayout build_layout(const spectra::EnergySequence& seq, int n, bool extended);

struct TruncatedOperator {
  Matrix matrix;
  std::vector<int> edge_band;
};

/// Shift operators on one layout. Sector-sized operators (A, a_b, a_f) act on
/// the (N+1)-dimensional eigenbases, tilde operators on the (N+2)-dimensional
/// space with chi last, and SUSY operators on the layout itself.
struct LadderBundle {
  TruncatedOperator A, A_dag;  // columns phi^b, rows phi^f
  TruncatedOperator a_b, a_b_dag;
  TruncatedOperator a_f, a_f_dag;
  TruncatedOperator a_f_tilde, a_f_tilde_dag, P_H;
  // Extended layout only (empty otherwise).
  TruncatedOperator A_tilde, A_tilde_dag, P_tilde;
  TruncatedOperator A_susy, A_susy_dag;
  TruncatedOperator Q, Q_dag;
};

LadderBundle ladder_matrices(const SpaceLayout& layout);

/// diag(A^dag A, A A^dag) on the layout; the chi slot, if present, is zero.
TruncatedOperator susy_hamiltonian(const SpaceLayout& layout);

/// Psi_0 = Phi^b_0, Psi_n = Phi^b_n + Phi^f_(n-1) for n = 0..N as columns;
/// the extended variant uses (Phi^b_0 + chi)/sqrt2 and Psi_n/sqrt2.
struct PsiBasis {
  Matrix vectors;
  std::vector<double> norms;
};

PsiBasis psi_basis(const SpaceLayout& layout);
PsiBasis psi_tilde_basis(const SpaceLayout& layout);

struct CheckEntry {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string note;
  // A claim taken verbatim from the source text; excluded from all_pass().
  bool literal_claim = false;
  bool pass() const { return residual <= tolerance; }
};

struct CheckReport {
  std::vector<CheckEntry> entries;
  // True when every non-literal entry passes.
  bool all_pass() const;
  const CheckEntry* find(const std::string& name) const;
};

/// Every shift relation of the truncated representation, off the edge band.
CheckReport verify_shift_relations(const SpaceLayout& layout);

/// Formal annihilator on span{Psi_n}: Psi_0 -> 0, Psi_n -> sqrt(eps_n) Psi_(n-1),
/// with its adjoint taken on the orthonormal set Psi_0, Psi_n/sqrt2.
struct AnnihilatorReport {
  // Eigenvalue of A^dag A on Psi_n, n = 0..N (Psi_n is an eigenvector).
  std::vector<double> diagonal;
  // Largest off-diagonal leak of A^dag A Psi_n outside span{Psi_n}.
  double eigen_residual = 0.0;
  double annihilates_ground = 0.0;  // |A Psi_0|
  CheckReport checks;
};

// Requires a non-extended layout.
AnnihilatorReport formal_annihilator_check(const SpaceLayout& layout);

/// Largest |m_ij| with neither i nor j in the edge band.
double max_abs_off_edge(const Matrix& m, const std::vector<int>& edge);

/// "rows cols" header followed by one row per line; entries are real parts when
/// the matrix is real, "re,im" pairs otherwise.
void write_dense(std::ostream& os, const Matrix& m);

}  // namespace susyvcs::fock
