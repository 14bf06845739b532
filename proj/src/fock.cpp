#include "susyvcs/fock.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

namespace susyvcs::fock {
namespace {

bool in_edge(int i, const std::vector<int>& edge) {
  return std::find(edge.begin(), edge.end(), i) != edge.end();
}

Matrix zeros(int n) {
  return Matrix::Zero(n, n);
}

TruncatedOperator op(Matrix m, std::vector<int> edge) {
  return {std::move(m), std::move(edge)};
}

double norm_of(const Vector& v) {
  return v.norm();
}

// Embed a sector-sized matrix as a block of a larger one.
Matrix embed(const Matrix& block, int dim, int row0, int col0) {
  Matrix out = zeros(dim);
  out.block(row0, col0, block.rows(), block.cols()) = block;
  return out;
}

Vector unit(int dim, int k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

}  // namespace

SpaceLayout::SpaceLayout(spectra::EnergySequence seq, int n, bool extended)
    : seq_(std::move(seq)), n_(n), extended_(extended) {
  if (n < 2) throw std::invalid_argument("truncation N must be at least 2");
  if (auto size = seq_.size(); size && *size < static_cast<std::size_t>(n) + 2)
    throw std::invalid_argument("energy table too short for truncation N (needs N+2 values)");
  if (seq_.eps(0) != 0.0) throw std::invalid_argument("layout needs a bosonic sequence with eps_0 = 0");
}

int SpaceLayout::chi() const {
  if (!extended_) throw std::logic_error("layout has no chi slot");
  return susy_dim();
}

SpaceLayout build_layout(const spectra::EnergySequence& seq, int n, bool extended) {
  return SpaceLayout(seq, n, extended);
}

LadderBundle ladder_matrices(const SpaceLayout& layout) {
  const int n = layout.truncation();
  const int s = layout.sector_dim();
  const int dim = layout.dim();
  const std::vector<int> top{n};

  LadderBundle out;
  Matrix a = zeros(s), af = zeros(s), aft = zeros(s + 1);
  for (int k = 1; k <= n; ++k) {
    a(k - 1, k) = std::sqrt(layout.eps(k));
    af(k - 1, k) = std::sqrt(layout.eps(k + 1));
    aft(k - 1, k) = std::sqrt(layout.eps(k + 1));
  }
  aft(s, 0) = std::sqrt(layout.eps(1));  // phi^f_0 -> chi

  out.A = op(a, top);
  out.A_dag = op(a.adjoint(), top);
  out.a_b = op(a, top);
  out.a_b_dag = op(a.adjoint(), top);
  out.a_f = op(af, top);
  out.a_f_dag = op(af.adjoint(), top);
  out.a_f_tilde = op(aft, top);
  out.a_f_tilde_dag = op(aft.adjoint(), top);
  Matrix p = Matrix::Identity(s + 1, s + 1);
  p(s, s) = 0.0;
  out.P_H = op(p, top);

  const std::vector<int> edge = layout.edge_band();
  if (layout.extended()) {
    Matrix at = embed(a, dim, 0, 0);
    at.block(s, s, s + 1, s + 1) = aft;
    Matrix pt = Matrix::Identity(dim, dim);
    pt(layout.chi(), layout.chi()) = 0.0;
    out.A_tilde = op(at, edge);
    out.A_tilde_dag = op(at.adjoint(), edge);
    out.P_tilde = op(pt, edge);
    out.A_susy = op(pt * at * pt, edge);
    out.A_susy_dag = op(pt * at.adjoint() * pt, edge);
  } else {
    Matrix as = embed(a, dim, 0, 0);
    as.block(s, s, s, s) = af;
    out.A_susy = op(as, edge);
    out.A_susy_dag = op(as.adjoint(), edge);
  }

  // Q maps Phi^b into Phi^f through A.
  Matrix q = embed(a, dim, layout.fer(0), layout.bos(0));
  out.Q = op(q, edge);
  out.Q_dag = op(q.adjoint(), edge);
  return out;
}

TruncatedOperator susy_hamiltonian(const SpaceLayout& layout) {
  const LadderBundle l = ladder_matrices(layout);
  const Matrix& a = l.A.matrix;
  Matrix h = zeros(layout.dim());
  const int s = layout.sector_dim();
  h.block(0, 0, s, s) = a.adjoint() * a;
  h.block(s, s, s, s) = a * a.adjoint();
  return op(h, layout.edge_band());
}

PsiBasis psi_basis(const SpaceLayout& layout) {
  const int n = layout.truncation();
  PsiBasis out{Matrix::Zero(layout.dim(), n + 1), {}};
  for (int k = 0; k <= n; ++k) {
    out.vectors(layout.bos(k), k) = 1.0;
    if (k > 0) out.vectors(layout.fer(k - 1), k) = 1.0;
    out.norms.push_back(out.vectors.col(k).norm());
  }
  return out;
}

PsiBasis psi_tilde_basis(const SpaceLayout& layout) {
  if (!layout.extended()) throw std::invalid_argument("psi_tilde_basis needs an extended layout");
  PsiBasis out = psi_basis(layout);
  out.vectors(layout.chi(), 0) = 1.0;
  out.vectors /= std::sqrt(2.0);
  for (int k = 0; k < out.vectors.cols(); ++k) out.norms[k] = out.vectors.col(k).norm();
  return out;
}

bool CheckReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.literal_claim || e.pass(); });
}

const CheckEntry* CheckReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

double max_abs_off_edge(const Matrix& m, const std::vector<int>& edge) {
  double out = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    if (in_edge(i, edge)) continue;
    for (int j = 0; j < m.cols(); ++j)
      if (!in_edge(j, edge)) out = std::max(out, std::abs(m(i, j)));
  }
  return out;
}

CheckReport verify_shift_relations(const SpaceLayout& layout) {
  const int n = layout.truncation();
  const int s = layout.sector_dim();
  const int dim = layout.dim();
  const LadderBundle l = ladder_matrices(layout);
  const Matrix& a = l.A.matrix;
  double scale = 1.0;
  for (int k = 0; k <= n + 1; ++k) scale = std::max(scale, layout.eps(k));
  const double tol = 1e-13 * scale;
  CheckReport r;
  auto add = [&](std::string name, double residual, std::string note = {}) {
    r.entries.push_back({std::move(name), residual, tol, std::move(note)});
  };
  auto worst = [&](auto&& per_index, int lo, int hi) {
    double w = 0.0;
    for (int k = lo; k <= hi; ++k) w = std::max(w, per_index(k));
    return w;
  };

  add("A phi^b_0 = 0", norm_of(a.col(0)),
      "the second ladder relation is read as acting on the ground state phi^b_0");
  add("A phi^b_n = sqrt(eps_n) phi^f_(n-1)",
      worst([&](int k) { return norm_of(a * unit(s, k) - std::sqrt(layout.eps(k)) * unit(s, k - 1)); }, 1, n));
  add("A^dag phi^f_n = sqrt(eps_(n+1)) phi^b_(n+1)",
      worst([&](int k) { return norm_of(a.adjoint() * unit(s, k) - std::sqrt(layout.eps(k + 1)) * unit(s, k + 1)); },
            0, n - 1));

  Matrix eps_diag = zeros(s);
  for (int k = 0; k <= n; ++k) eps_diag(k, k) = layout.eps(k);
  const Matrix hb = a.adjoint() * a;
  const Matrix hf = a * a.adjoint();
  add("a_b^dag a_b = H^b", (l.a_b_dag.matrix * l.a_b.matrix - hb).cwiseAbs().maxCoeff());
  add("H^b = diag(eps_0..eps_N)", (hb - eps_diag).cwiseAbs().maxCoeff());
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hb);
    double w = 0.0;
    for (int k = 0; k <= n; ++k) w = std::max(w, std::abs(es.eigenvalues()(k) - layout.eps(k)));
    r.entries.push_back({"spectrum of H^b", w, 1e-12 * scale, {}});
  }
  add("H^f A - A H^b = 0", max_abs_off_edge(hf * a - a * hb, l.A.edge_band));
  add("a_b^dag phi^b_n = sqrt(eps_(n+1)) phi^b_(n+1)",
      worst([&](int k) { return norm_of(l.a_b_dag.matrix * unit(s, k) - std::sqrt(layout.eps(k + 1)) * unit(s, k + 1)); },
            0, n - 1));

  const Matrix aff = l.a_f_dag.matrix * l.a_f.matrix;
  add("a_f^dag a_f phi^f_0 = 0", norm_of(aff.col(0)));
  add("a_f^dag a_f phi^f_n = eps_(n+1) phi^f_n",
      worst([&](int k) { return norm_of(aff * unit(s, k) - layout.eps(k + 1) * unit(s, k)); }, 1, n - 1));
  r.entries.push_back({"a_f^dag a_f phi^f_n = eps_n phi^f_n (as printed)",
                       worst([&](int k) { return norm_of(aff * unit(s, k) - layout.eps(k) * unit(s, k)); }, 1, n - 1),
                       tol, "the fermionic level of phi^f_n is eps_(n+1)", true});

  const int chi = s;  // chi slot in the (N+2)-dimensional tilde space
  const Matrix& at = l.a_f_tilde.matrix;
  const Matrix& atd = l.a_f_tilde_dag.matrix;
  const Matrix& p = l.P_H.matrix;
  add("a_f~ chi = 0", norm_of(at.col(chi)));
  add("a_f~ phi^f_0 = sqrt(eps_1) chi", norm_of(at * unit(s + 1, 0) - std::sqrt(layout.eps(1)) * unit(s + 1, chi)));
  add("a_f~ phi^f_n = sqrt(eps_(n+1)) phi^f_(n-1)",
      worst([&](int k) { return norm_of(at * unit(s + 1, k) - std::sqrt(layout.eps(k + 1)) * unit(s + 1, k - 1)); }, 1,
            n));
  add("a_f~^dag chi = sqrt(eps_1) phi^f_0",
      norm_of(atd * unit(s + 1, chi) - std::sqrt(layout.eps(1)) * unit(s + 1, 0)));
  add("a_f~^dag a_f~ phi^f_0 = eps_1 phi^f_0",
      norm_of(atd * at * unit(s + 1, 0) - layout.eps(1) * unit(s + 1, 0)));

  const Matrix af_emb = embed(l.a_f.matrix, s + 1, 0, 0);
  const Matrix afd_emb = embed(l.a_f_dag.matrix, s + 1, 0, 0);
  add("a_f = P a_f~ P", (p * at * p - af_emb).cwiseAbs().maxCoeff());
  add("a_f^dag = P a_f~^dag P", max_abs_off_edge(p * atd * p - afd_emb, {n}));
  add("a_f^dag = a_f~^dag P", max_abs_off_edge(atd * p - afd_emb, {n}));
  {
    const Matrix lhs = atd * at * p;
    add("a_f~^dag a_f~ P = A A^dag", max_abs_off_edge(lhs.block(0, 0, s, s) - hf, {n}));
  }
  add("P^2 = P = P^dag", std::max((p * p - p).cwiseAbs().maxCoeff(), (p.adjoint() - p).cwiseAbs().maxCoeff()));
  {
    std::mt19937 rng(5);
    std::normal_distribution<double> g;
    double w = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
      Vector v(s + 1);
      for (int i = 0; i <= s; ++i) v(i) = std::complex<double>(g(rng), g(rng));
      const Vector c = unit(s + 1, chi);
      w = std::max(w, norm_of(p * v - (v - c.dot(v) * c)));
    }
    add("P v = v - <chi,v> chi", w);
  }

  const Matrix h = susy_hamiltonian(layout).matrix;
  const Matrix& q = l.Q.matrix;
  const Matrix& qd = l.Q_dag.matrix;
  add("{Q^dag,Q} = H^SUSY", (qd * q + q * qd - h).cwiseAbs().maxCoeff());
  add("Q Phi^b_0 = 0", norm_of(q * unit(dim, layout.bos(0))));
  add("Q^dag Phi^b_0 = 0", norm_of(qd * unit(dim, layout.bos(0))));

  const PsiBasis psi = psi_basis(layout);
  add("H^SUSY Psi_n = eps_n Psi_n", worst([&](int k) {
        return norm_of(h * psi.vectors.col(k) - layout.eps(k) * psi.vectors.col(k));
      }, 0, n - 1));
  {
    double w = std::abs(psi.norms[0] - 1.0);
    for (int k = 1; k <= n; ++k) w = std::max(w, std::abs(psi.norms[k] - std::sqrt(2.0)));
    add("|Psi_0| = 1, |Psi_n| = sqrt2", w);
    const Matrix gram = psi.vectors.adjoint() * psi.vectors;
    double off = 0.0;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        if (i != j) off = std::max(off, std::abs(gram(i, j)));
    r.entries.push_back({"Psi_n mutually orthogonal", off, 1e-14, {}});
  }

  const Matrix& as = l.A_susy.matrix;
  const Matrix& asd = l.A_susy_dag.matrix;
  add("A_SUSY Phi^b_0 = 0", norm_of(as * unit(dim, layout.bos(0))));
  add("A_SUSY Phi^b_n = sqrt(eps_n) Phi^b_(n-1)", worst([&](int k) {
        return norm_of(as * unit(dim, layout.bos(k)) - std::sqrt(layout.eps(k)) * unit(dim, layout.bos(k - 1)));
      }, 1, n));
  add("A_SUSY^dag Phi^b_n = sqrt(eps_(n+1)) Phi^b_(n+1)", worst([&](int k) {
        return norm_of(asd * unit(dim, layout.bos(k)) - std::sqrt(layout.eps(k + 1)) * unit(dim, layout.bos(k + 1)));
      }, 0, n - 1), "checked from n = 0; the listed range starts at n = 1");
  add("A_SUSY Phi^f_0 = 0", norm_of(as * unit(dim, layout.fer(0))));
  add("A_SUSY Phi^f_n = sqrt(eps_(n+1)) Phi^f_(n-1)", worst([&](int k) {
        return norm_of(as * unit(dim, layout.fer(k)) - std::sqrt(layout.eps(k + 1)) * unit(dim, layout.fer(k - 1)));
      }, 1, n));
  add("A_SUSY^dag Phi^f_n = sqrt(eps_(n+2)) Phi^f_(n+1)", worst([&](int k) {
        return norm_of(asd * unit(dim, layout.fer(k)) - std::sqrt(layout.eps(k + 2)) * unit(dim, layout.fer(k + 1)));
      }, 0, n - 1));

  if (layout.extended()) {
    const Matrix& atl = l.A_tilde.matrix;
    const Matrix& atld = l.A_tilde_dag.matrix;
    const Matrix& pt = l.P_tilde.matrix;
    add("H^SUSY = P~ A~^dag A~ P~", max_abs_off_edge(pt * atld * atl * pt - h, layout.edge_band()));
    const PsiBasis pst = psi_tilde_basis(layout);
    add("A~ Psi~_0 = 0", norm_of(atl * pst.vectors.col(0)));
    add("A~ Psi~_n = sqrt(eps_n) Psi~_(n-1)", worst([&](int k) {
          return norm_of(atl * pst.vectors.col(k) - std::sqrt(layout.eps(k)) * pst.vectors.col(k - 1));
        }, 1, n));
    add("A~^dag Psi~_n = sqrt(eps_(n+1)) Psi~_(n+1)", worst([&](int k) {
          return norm_of(atld * pst.vectors.col(k) - std::sqrt(layout.eps(k + 1)) * pst.vectors.col(k + 1));
        }, 0, n - 1));
    const Matrix gram = pst.vectors.adjoint() * pst.vectors;
    add("Psi~_n orthonormal", (gram - Matrix::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff());
    add("P~ Psi~_0 = Psi_0 / sqrt2", norm_of(pt * pst.vectors.col(0) - psi.vectors.col(0) / std::sqrt(2.0)));
  }
  return r;
}

AnnihilatorReport formal_annihilator_check(const SpaceLayout& layout) {
  if (layout.extended()) throw std::invalid_argument("formal_annihilator_check needs a non-extended layout");
  const int n = layout.truncation();
  const LadderBundle l = ladder_matrices(layout);
  const PsiBasis psi = psi_basis(layout);
  const Matrix& as = l.A_susy.matrix;

  // Orthonormal frame Psi_0, Psi_n / sqrt2 of span{Psi_n}.
  Matrix v = psi.vectors;
  for (int k = 1; k <= n; ++k) v.col(k) /= std::sqrt(2.0);
  const Matrix m = v.adjoint() * as * v;
  const Matrix k_op = m.adjoint() * m;

  AnnihilatorReport out;
  double scale = 1.0;
  for (int k = 0; k <= n; ++k) scale = std::max(scale, layout.eps(k));
  const double tol = 1e-13 * scale;
  for (int k = 0; k <= n; ++k) out.diagonal.push_back(k_op(k, k).real());
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      if (i != j) out.eigen_residual = std::max(out.eigen_residual, std::abs(k_op(i, j)));
  out.annihilates_ground = norm_of(as * psi.vectors.col(0));

  auto add = [&](std::string name, double residual, std::string note = {}, bool literal = false) {
    out.checks.entries.push_back({std::move(name), residual, tol, std::move(note), literal});
  };
  add("A preserves span{Psi_n}", (as * v - v * m).cwiseAbs().maxCoeff());
  add("A Psi_0 = 0", out.annihilates_ground);
  double w = 0.0;
  for (int k = 1; k <= n; ++k)
    w = std::max(w, norm_of(as * psi.vectors.col(k) - std::sqrt(layout.eps(k)) * psi.vectors.col(k - 1)));
  add("A Psi_n = sqrt(eps_n) Psi_(n-1)", w);
  add("A^dag Psi_0 = sqrt(eps_1/2) Psi_1/sqrt2",
      norm_of(m.adjoint().col(0) - std::sqrt(layout.eps(1) / 2.0) * unit(n + 1, 1)));
  w = 0.0;
  for (int k = 1; k < n; ++k)
    w = std::max(w, norm_of(m.adjoint().col(k) - std::sqrt(layout.eps(k + 1)) * unit(n + 1, k + 1)));
  add("A^dag Psi_n/sqrt2 = sqrt(eps_(n+1)) Psi_(n+1)/sqrt2", w);
  w = out.eigen_residual;
  for (int k = 0; k <= n; ++k)
    if (k != 1) w = std::max(w, std::abs(out.diagonal[k] - layout.eps(k)));
  add("A^dag A Psi_n = eps_n Psi_n (n != 1)", w);
  add("A^dag A Psi_1 = (eps_1/2) Psi_1", std::abs(out.diagonal[1] - layout.eps(1) / 2.0));
  add("A^dag A coincides with H^SUSY on span{Psi_n} (as printed)", std::abs(out.diagonal[1] - layout.eps(1)),
      "the displayed eps_1/2 relation shows it does not coincide", true);
  return out;
}

void write_dense(std::ostream& os, const Matrix& m) {
  const bool real = m.imag().cwiseAbs().maxCoeff() == 0.0;
  os << m.rows() << ' ' << m.cols() << '\n';
  os.precision(17);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      if (real)
        os << m(i, j).real();
      else
        os << m(i, j).real() << ',' << m(i, j).imag();
    }
    os << '\n';
  }
}

}  // namespace susyvcs::fock
