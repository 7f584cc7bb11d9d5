#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qgf/hubbard.hpp"
#include "qgf/mclachlan.hpp"
#include "qgf/pauli.hpp"
#include "qgf/statevector.hpp"

namespace qgf {

/// All X/Y words with an odd number of Y symbols on the given support,
/// deduplicated and in deterministic order. Odd Y count keeps exp(-i theta A)
/// real on real states, which is what makes these usable as imaginary-time
/// generators.
std::vector<PauliWord> odd_y_words(int n_qubits, const std::vector<int>& support);

/// Qubit-adapt operator pool on a Hubbard layout: odd-Y words on every
/// same-spin qubit pair plus every (2 up, 2 down) quadruple. These index
/// patterns mirror number- and spin-conserving single and double excitations.
std::vector<PauliWord> build_qubit_adapt_pool(const QubitLayout& layout);

struct IteConfig {
  double distance_threshold = 1e-4;
  double dtau = 0.01;
  double max_tau = 10.0;
  int max_params = 200;
  double tikhonov_lambda = 1e-6;
  /// Stop early once both the step norm and energy change stall below this.
  double stall_tol = 0.0;
};

struct IteResult {
  Ansatz ansatz;
  Statevector state;
  double energy = 0;
  bool threshold_met = true;  // false when the pool ran out above threshold
  std::vector<double> taus;
  std::vector<double> energies;
  std::vector<double> distances;
  std::vector<double> infidelities;  // filled when a reference state is given
  std::vector<std::pair<double, PauliWord>> insertions;
};

/// Adaptive variational imaginary-time evolution towards the ground state of
/// `hamiltonian`, growing the ansatz from `pool` whenever the McLachlan
/// distance to the exact imaginary-time flow exceeds the threshold.
IteResult run_avqite(const PauliSum& hamiltonian, const Statevector& initial,
                     const std::vector<PauliWord>& pool, const IteConfig& config,
                     const Statevector* reference = nullptr);

}  // namespace qgf
