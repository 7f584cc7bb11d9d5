#pragma once

#include <cstdint>
#include <vector>

#include "qgf/statevector.hpp"

namespace qgf {

struct CnotBound {
  std::int64_t unitary = 0;     // sum of 2 (weight - 1) over the generators
  std::int64_t controlled = 0;  // plus two ancilla CNOTs per parameter
};

/// Upper bound on the CNOT count of the ansatz circuit. Generators of weight
/// zero or one contribute nothing to the unitary part.
CnotBound cnot_upper_bound(const Ansatz& ansatz);
CnotBound cnot_upper_bound(const std::vector<int>& generator_weights);

/// Measurement circuits per time step for an ansatz with n_params parameters
/// and a Hamiltonian with n_ham terms: 4 (Np^2 + 2 Np + 2 Np NH + NH^2),
/// plus 8 (NH + 4) NH extra runs when the adaptive branch is entered.
std::int64_t circuits_per_step(int n_params, int n_ham_terms, bool adaptive);

/// Unitary count estimate for Trotterized evolution to accuracy delta:
/// 2 NH (4 sqrt(5) / sqrt(delta)) (NH t)^(3/2).
double trotter_unitaries(int n_ham_terms, double delta, double time);

/// Two-qubit gate count of a layered variational Hamiltonian ansatz for the
/// Hubbard chain: layers * (8 N^(3/2) + N - 4 sqrt(N)).
double vha_cnots(int n_sites, int layers);

}  // namespace qgf
