#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qgf/pauli.hpp"

namespace qgf {

/// Dense complex amplitude vector over the computational basis.
/// Basis index b has qubit q stored in bit q (qubit 0 is the least
/// significant bit); |0...0> is index 0.
class Statevector {
 public:
  explicit Statevector(int n_qubits);
  static Statevector basis_state(int n_qubits, std::uint64_t bits);

  int n_qubits() const { return n_; }
  std::size_t dim() const { return amp_.size(); }
  std::span<cplx> amplitudes() { return amp_; }
  std::span<const cplx> amplitudes() const { return amp_; }
  cplx& operator[](std::size_t i) { return amp_[i]; }
  const cplx& operator[](std::size_t i) const { return amp_[i]; }

  double norm() const;
  Statevector& normalize();
  Statevector& operator*=(cplx scale);
  Statevector& operator+=(const Statevector& other);

 private:
  std::vector<cplx> amp_;
  int n_ = 0;
};

/// P|psi>; norm preserving, O(2^n).
Statevector apply_pauli(const PauliWord& word, const Statevector& psi);

/// exp(-i theta P)|psi> = cos(theta)|psi> - i sin(theta) P|psi>.
void apply_exp_pauli_inplace(double theta, const PauliWord& word, Statevector& psi);
Statevector apply_exp_pauli(double theta, const PauliWord& word, const Statevector& psi);

/// O|psi> for a Pauli sum O.
Statevector apply_sum(const PauliSum& op, const Statevector& psi);

/// <a|b> with the conjugate on the first argument.
cplx inner(const Statevector& a, const Statevector& b);

/// <psi|O|psi>.
cplx expectation(const PauliSum& op, const Statevector& psi);

/// Ordered product of Pauli exponentials: generators[0] acts on the state
/// first, so apply_ansatz(a, psi) = exp(-i t_N A_N) ... exp(-i t_1 A_1)|psi>.
struct Ansatz {
  std::vector<PauliWord> generators;
  std::vector<double> angles;

  std::size_t size() const { return generators.size(); }
};

Statevector apply_ansatz(const Ansatz& ansatz, const Statevector& psi);

}  // namespace qgf
