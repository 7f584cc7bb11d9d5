#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qgf/pauli.hpp"
#include "qgf/statevector.hpp"

namespace qgf {

/// Variational tangent space of a Pauli-exponential ansatz at fixed angles.
/// All states live in the final frame: psi = U(theta)|psi_init> and
/// derivs[mu] = d psi / d theta_mu (the -i A_mu insertion propagated through
/// the remaining factors).
struct TangentFrame {
  Statevector psi;
  std::vector<Statevector> derivs;
  std::vector<cplx> deriv_overlap;  // <d_mu psi | psi>
};

TangentFrame build_tangent_frame(const Ansatz& ansatz, const Statevector& psi_init);

/// Metric M_{mu nu} = Re[<d_mu|d_nu> + <d_mu|psi><d_nu|psi>]. The second
/// factor pairs two bra-side derivatives; for a unitary ansatz both overlaps
/// are purely imaginary, so the product subtracts <A_mu><A_nu> and rows of
/// identity-like generators vanish. Exactly symmetric by construction.
Eigen::MatrixXd metric_matrix(const TangentFrame& frame);

/// Real-time force V_mu = Im[<d_mu|H|psi> - <d_mu|psi><H>].
Eigen::VectorXd realtime_force(const TangentFrame& frame, const Statevector& h_psi,
                               double energy);

/// Imaginary-time force V_mu = -Re[<d_mu|H|psi> - <d_mu|psi><H>], the
/// steepest-descent direction -(1/2) dE/d theta_mu for a unitary ansatz.
Eigen::VectorXd imagtime_force(const TangentFrame& frame, const Statevector& h_psi,
                               double energy);

struct EomSolution {
  Eigen::VectorXd theta_dot;
  double residual = 0;  // ||M theta_dot - V||
};

/// Tikhonov-regularized equation of motion, theta_dot = (M + lambda I)^{-1} V,
/// the minimizer of the regularized McLachlan quadratic form. Falls back to a
/// pseudoinverse solve when the factorization degenerates.
EomSolution solve_eom(const Eigen::MatrixXd& m, const Eigen::VectorXd& v,
                      double lambda);

/// Squared Frobenius distance between the variational flow and the exact flow,
///   L^2 = 2 (theta_dot^T M theta_dot - 2 V^T theta_dot + var_h),
/// where var_h = <H^2> - <H>^2. Zero exactly when the flow is representable.
/// Throws if round-off drives the value below -1e-10.
double mclachlan_distance(const Eigen::MatrixXd& m, const Eigen::VectorXd& v,
                          const Eigen::VectorXd& theta_dot, double var_h);

/// One trial column for appending a zero-angle generator at the end of the
/// ansatz: the new row/column of M and the new V entry.
struct TrialColumn {
  Eigen::VectorXd m_col;  // M_{mu, new} for existing mu
  double m_diag = 0;      // M_{new, new}
  double v_real = 0;      // real-time force entry
  double v_imag = 0;      // imaginary-time force entry
  cplx overlap;           // <d_new psi | psi>
};

TrialColumn trial_column(const TangentFrame& frame, const Statevector& h_psi,
                         double energy, const PauliWord& candidate);

/// Extends (M, V) by one trial column and reports the optimal distance of the
/// grown system; used to grade pool candidates.
struct TrialScore {
  double distance = 0;
  Eigen::VectorXd theta_dot;
};

TrialScore score_trial(const Eigen::MatrixXd& m, const Eigen::VectorXd& v,
                       const TrialColumn& col, bool realtime, double var_h,
                       double lambda);

}  // namespace qgf
