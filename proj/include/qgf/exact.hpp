#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "qgf/hubbard.hpp"
#include "qgf/pauli.hpp"
#include "qgf/statevector.hpp"

namespace qgf {

/// Dense matrix of a Pauli sum; guarded to n <= 12 qubits.
Eigen::MatrixXcd dense_matrix(const PauliSum& op);

/// Full eigensystem of a Hermitian Pauli sum, cached by the caller.
struct EigenSystem {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

EigenSystem eigensystem(const PauliSum& op);

/// Symmetry sector selector: electron count and 2*S_z over a qubit layout.
struct Sector {
  int n_electrons = 0;
  int sz_twice = 0;
};

struct GroundState {
  double energy = 0;
  Statevector state;
  bool degenerate = false;
};

/// Lowest eigenpair, optionally restricted to the basis states of one
/// (N, S_z) sector. Degeneracy within 1e-10 is flagged, not resolved.
GroundState ground_state(const PauliSum& hamiltonian, const QubitLayout& layout,
                         std::optional<Sector> sector = std::nullopt);

/// exp(-i H t)|psi> via the cached eigensystem; unitary to round-off.
class ExactPropagator {
 public:
  explicit ExactPropagator(const PauliSum& hamiltonian);
  explicit ExactPropagator(EigenSystem system);

  Statevector propagate(const Statevector& psi, double time) const;
  const EigenSystem& system() const { return sys_; }

 private:
  EigenSystem sys_;
  int n_qubits_;
};

struct TimeGreens {
  std::vector<double> times;
  std::vector<cplx> greater;
  std::vector<cplx> lesser;
};

/// Exact particle/hole Green's functions
///   G>_pq(t) = -i e^{+iE0 t} <psi0| c_p e^{-iHt} c^dag_q |psi0>
///   G<_pq(t) = +i e^{-iE0 t} <psi0| c^dag_q e^{+iHt} c_p |psi0>
/// sampled on a uniform grid via the eigensystem of H.
TimeGreens exact_greens_time(const EigenSystem& sys, double e0,
                             const Statevector& psi0, const PauliSum& c_p,
                             const PauliSum& c_q, const std::vector<double>& times);

/// Resolvent form of the retarded Green's function, with signs fixed by the
/// damped Fourier integral of the time-domain definition:
///   G^R_pq(w) = <psi0| c_p (w + E0 - H + i zeta)^{-1} c^dag_q |psi0>
///             + <psi0| c^dag_q (w - E0 + H + i zeta)^{-1} c_p |psi0>.
std::vector<cplx> exact_greens_omega(const EigenSystem& sys, double e0,
                                     const Statevector& psi0, const PauliSum& c_p,
                                     const PauliSum& c_q,
                                     const std::vector<double>& omega, double zeta);

}  // namespace qgf
