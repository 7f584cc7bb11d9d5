#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qgf/hubbard.hpp"
#include "qgf/mclachlan.hpp"
#include "qgf/pauli.hpp"
#include "qgf/statevector.hpp"

namespace qgf {

/// Pauli-word decomposition of one fermionic ladder operator acting on the
/// ground state; each weighted word is one branch of the linear combination.
struct BranchSet {
  std::vector<PauliTerm> entries;
  std::string source;  // e.g. "cdag site=0 spin=up"
};

BranchSet make_branch_set(const PauliSum& ladder_op, std::string source);

struct BranchState {
  Statevector state;  // normalized
  double norm = 0;    // pre-normalization norm, reattached downstream
};

/// Normalizes sum_a eta_a P_a |psi0|; throws on a zero-norm branch state
/// (fully occupied / empty orbital).
BranchState prepare_branch_state(const Statevector& psi0, const BranchSet& branch);

/// Operator pool for the dynamics: all Hamiltonian words plus the ladder
/// words of both branch sets, deduplicated (the identity word is kept in the
/// list for bookkeeping but is never selected as a generator).
std::vector<PauliWord> build_dynamics_pool(const PauliSum& hamiltonian,
                                           const BranchSet& branch_p,
                                           const BranchSet& branch_q);

struct DynConfig {
  double l2_cut = 1e-3;
  double dt = 0.01;
  double total_time = 10.0;
  double tikhonov_lambda = 1e-6;
  int max_params = 200;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<PauliWord> generators;          // final generator list
  std::vector<std::vector<double>> angles;    // per time step, length grows
  std::vector<double> phases;                 // accumulated global phase phi(t)
  std::vector<std::pair<double, PauliWord>> insertions;
  std::vector<double> l2;
  std::vector<double> var_h;                  // 2 (<H^2> - <H>^2)
  std::vector<double> delta;                  // vs exact propagation, optional
  double branch_norm_p = 0;
  double branch_norm_q = 0;
  double e_phase = 0;  // ground-state energy entering exp(+i E0 t)
  int n_qubits = 0;
  int p = -1, q = -1;

  Ansatz ansatz_at(std::size_t step) const;
  /// exp(i phi) U(theta)|psi_init> at a recorded step: the physical state,
  /// with the classically tracked global phase attached.
  Statevector state_at(std::size_t step, const Statevector& psi_init) const;
};

/// Reference propagator used for the per-step unitary error Delta(t); maps
/// (state, t) to exp(-i H t)|state>.
using ExactFlow = std::function<Statevector(const Statevector&, double)>;

/// Adaptive variational real-time evolution of a normalized initial state,
/// growing the ansatz from `pool` whenever the McLachlan distance exceeds
/// l2_cut. The angle flow is insensitive to global phase (and hence to
/// identity shifts of H); the physical phase is recovered alongside it by
/// integrating phi_dot = -<H> + sum_mu theta_dot_mu <A_mu>, the projection of
/// the Schroedinger flow onto the ray direction.
Trajectory evolve(const Statevector& initial, const PauliSum& hamiltonian,
                  const std::vector<PauliWord>& pool, const DynConfig& config,
                  const ExactFlow& exact_flow = nullptr);

/// ||exp(i phi) U(theta)|psi> - exp(-i H t)|psi>|| for one recorded step.
double unitary_error(const Ansatz& ansatz, double phase, const Statevector& psi_init,
                     const Statevector& exact_state);

}  // namespace qgf
