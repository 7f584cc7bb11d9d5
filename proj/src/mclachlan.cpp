#include "qgf/mclachlan.hpp"

#include <cmath>
#include <stdexcept>

namespace qgf {

TangentFrame build_tangent_frame(const Ansatz& ansatz, const Statevector& psi_init) {
  const std::size_t n = ansatz.size();
  TangentFrame frame{psi_init, {}, {}};
  frame.derivs.reserve(n);

  // Forward pass: derivs[mu] starts as -i A_mu U_{mu..1}|psi_init> and is then
  // dragged through the remaining factors together with psi itself.
  for (std::size_t mu = 0; mu < n; ++mu) {
    apply_exp_pauli_inplace(ansatz.angles[mu], ansatz.generators[mu], frame.psi);
    Statevector d = apply_pauli(ansatz.generators[mu], frame.psi);
    d *= cplx{0, -1};
    frame.derivs.push_back(std::move(d));
    for (std::size_t k = 0; k < mu; ++k) {
      apply_exp_pauli_inplace(ansatz.angles[mu], ansatz.generators[mu], frame.derivs[k]);
    }
  }
  frame.deriv_overlap.reserve(n);
  for (const auto& d : frame.derivs) {
    frame.deriv_overlap.push_back(inner(d, frame.psi));
  }
  return frame;
}

Eigen::MatrixXd metric_matrix(const TangentFrame& frame) {
  const auto n = static_cast<Eigen::Index>(frame.derivs.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const cplx gram = inner(frame.derivs[static_cast<std::size_t>(i)],
                              frame.derivs[static_cast<std::size_t>(j)]);
      const cplx phase = frame.deriv_overlap[static_cast<std::size_t>(i)] *
                         frame.deriv_overlap[static_cast<std::size_t>(j)];
      const double value = (gram + phase).real();
      m(i, j) = value;
      m(j, i) = value;
    }
  }
  return m;
}

namespace {

Eigen::VectorXd force_vector(const TangentFrame& frame, const Statevector& h_psi,
                             double energy, bool realtime) {
  const auto n = static_cast<Eigen::Index>(frame.derivs.size());
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx bracket = inner(frame.derivs[static_cast<std::size_t>(i)], h_psi) -
                         frame.deriv_overlap[static_cast<std::size_t>(i)] * energy;
    v[i] = realtime ? bracket.imag() : -bracket.real();
  }
  return v;
}

}  // namespace

Eigen::VectorXd realtime_force(const TangentFrame& frame, const Statevector& h_psi,
                               double energy) {
  return force_vector(frame, h_psi, energy, true);
}

Eigen::VectorXd imagtime_force(const TangentFrame& frame, const Statevector& h_psi,
                               double energy) {
  return force_vector(frame, h_psi, energy, false);
}

EomSolution solve_eom(const Eigen::MatrixXd& m, const Eigen::VectorXd& v,
                      double lambda) {
  if (m.rows() != m.cols() || m.rows() != v.size()) {
    throw std::invalid_argument("equation of motion dimensions differ");
  }
  if (v.size() == 0) return {Eigen::VectorXd(0), 0.0};

  const Eigen::MatrixXd reg =
      m + lambda * Eigen::MatrixXd::Identity(m.rows(), m.cols());
  Eigen::LDLT<Eigen::MatrixXd> ldlt(reg);
  Eigen::VectorXd theta_dot;
  if (ldlt.info() == Eigen::Success) {
    theta_dot = ldlt.solve(v);
  }
  if (ldlt.info() != Eigen::Success || !theta_dot.allFinite()) {
    // Degenerate factorization: fall back to a rank-revealing least-squares
    // solve of the regularized system.
    theta_dot = reg.completeOrthogonalDecomposition().solve(v);
    if (!theta_dot.allFinite()) {
      throw std::runtime_error("equation of motion solve failed: M too ill-conditioned");
    }
  }
  return {theta_dot, (m * theta_dot - v).norm()};
}

double mclachlan_distance(const Eigen::MatrixXd& m, const Eigen::VectorXd& v,
                          const Eigen::VectorXd& theta_dot, double var_h) {
  const double quad = theta_dot.size() == 0
                          ? 0.0
                          : theta_dot.dot(m * theta_dot) - 2.0 * v.dot(theta_dot);
  const double dist = 2.0 * (quad + var_h);
  if (dist < -1e-10) {
    throw std::runtime_error("McLachlan distance came out negative");
  }
  return dist;
}

TrialColumn trial_column(const TangentFrame& frame, const Statevector& h_psi,
                         double energy, const PauliWord& candidate) {
  Statevector d_new = apply_pauli(candidate, frame.psi);
  d_new *= cplx{0, -1};
  const cplx overlap = inner(d_new, frame.psi);

  TrialColumn col;
  col.overlap = overlap;
  const auto n = static_cast<Eigen::Index>(frame.derivs.size());
  col.m_col.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx gram = inner(frame.derivs[static_cast<std::size_t>(i)], d_new);
    const cplx phase = frame.deriv_overlap[static_cast<std::size_t>(i)] * overlap;
    col.m_col[i] = (gram + phase).real();
  }
  // <d_new|d_new> = <psi|A^2|psi> = 1 for any Pauli word.
  col.m_diag = (cplx{1, 0} + overlap * overlap).real();
  const cplx bracket = inner(d_new, h_psi) - overlap * energy;
  col.v_real = bracket.imag();
  col.v_imag = -bracket.real();
  return col;
}

TrialScore score_trial(const Eigen::MatrixXd& m, const Eigen::VectorXd& v,
                       const TrialColumn& col, bool realtime, double var_h,
                       double lambda) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd grown(n + 1, n + 1);
  grown.topLeftCorner(n, n) = m;
  grown.block(0, n, n, 1) = col.m_col;
  grown.block(n, 0, 1, n) = col.m_col.transpose();
  grown(n, n) = col.m_diag;

  Eigen::VectorXd grown_v(n + 1);
  grown_v.head(n) = v;
  grown_v[n] = realtime ? col.v_real : col.v_imag;

  const EomSolution sol = solve_eom(grown, grown_v, lambda);
  return {mclachlan_distance(grown, grown_v, sol.theta_dot, var_h), sol.theta_dot};
}

}  // namespace qgf
