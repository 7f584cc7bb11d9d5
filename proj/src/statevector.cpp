#include "qgf/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qgf {

namespace {

constexpr cplx kQuarterPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void check_dims(const PauliWord& word, const Statevector& psi) {
  if (word.n_qubits() != psi.n_qubits()) {
    throw std::invalid_argument("operator/state qubit counts differ");
  }
}

inline double z_sign(std::uint64_t bits, std::uint64_t z_mask) {
  return (std::popcount(bits & z_mask) & 1) ? -1.0 : 1.0;
}

}  // namespace

Statevector::Statevector(int n_qubits) : n_(n_qubits) {
  if (n_qubits <= 0 || n_qubits > 30) {
    throw std::invalid_argument("qubit count out of range for dense state");
  }
  amp_.assign(std::size_t{1} << n_qubits, cplx{0, 0});
}

Statevector Statevector::basis_state(int n_qubits, std::uint64_t bits) {
  Statevector s(n_qubits);
  if (bits >= s.dim()) throw std::out_of_range("basis index");
  s.amp_[bits] = 1.0;
  return s;
}

double Statevector::norm() const {
  double n2 = 0;
  for (const cplx& a : amp_) n2 += std::norm(a);
  return std::sqrt(n2);
}

Statevector& Statevector::normalize() {
  const double n = norm();
  if (n == 0) throw std::runtime_error("cannot normalize a zero state");
  const double inv = 1.0 / n;
  for (cplx& a : amp_) a *= inv;
  return *this;
}

Statevector& Statevector::operator*=(cplx scale) {
  for (cplx& a : amp_) a *= scale;
  return *this;
}

Statevector& Statevector::operator+=(const Statevector& other) {
  if (other.dim() != dim()) throw std::invalid_argument("state dimensions differ");
  for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] += other.amp_[i];
  return *this;
}

Statevector apply_pauli(const PauliWord& word, const Statevector& psi) {
  check_dims(word, psi);
  Statevector out(psi.n_qubits());
  const std::uint64_t x = word.x_mask();
  const std::uint64_t z = word.z_mask();
  const cplx base = kQuarterPhases[std::popcount(x & z) & 3];
  const std::size_t dim = psi.dim();
  for (std::size_t b = 0; b < dim; ++b) {
    out[b ^ x] = base * z_sign(b, z) * psi[b];
  }
  return out;
}

void apply_exp_pauli_inplace(double theta, const PauliWord& word, Statevector& psi) {
  check_dims(word, psi);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const std::uint64_t x = word.x_mask();
  const std::uint64_t z = word.z_mask();
  const std::size_t dim = psi.dim();
  if (x == 0) {
    // Diagonal word: pure phase per basis state.
    const cplx plus{c, -s}, minus{c, s};
    for (std::size_t b = 0; b < dim; ++b) {
      psi[b] *= (std::popcount(b & z) & 1) ? minus : plus;
    }
    return;
  }
  const cplx base = kQuarterPhases[std::popcount(x & z) & 3];
  const cplx mis = cplx{0, -1} * cplx{s, 0} * base;
  const std::uint64_t high = std::uint64_t{1} << (63 - std::countl_zero(x));
  for (std::size_t b = 0; b < dim; ++b) {
    if (b & high) continue;
    const std::size_t p = b ^ x;
    const cplx ab = psi[b];
    const cplx ap = psi[p];
    psi[b] = c * ab + mis * z_sign(p, z) * ap;
    psi[p] = c * ap + mis * z_sign(b, z) * ab;
  }
}

Statevector apply_exp_pauli(double theta, const PauliWord& word, const Statevector& psi) {
  Statevector out = psi;
  apply_exp_pauli_inplace(theta, word, out);
  return out;
}

Statevector apply_sum(const PauliSum& op, const Statevector& psi) {
  if (op.n_qubits() != psi.n_qubits()) {
    throw std::invalid_argument("operator/state qubit counts differ");
  }
  Statevector out(psi.n_qubits());
  const std::size_t dim = psi.dim();
  for (const auto& term : op.terms()) {
    const std::uint64_t x = term.word.x_mask();
    const std::uint64_t z = term.word.z_mask();
    const cplx base = term.coeff * kQuarterPhases[std::popcount(x & z) & 3];
    for (std::size_t b = 0; b < dim; ++b) {
      out[b ^ x] += base * z_sign(b, z) * psi[b];
    }
  }
  return out;
}

cplx inner(const Statevector& a, const Statevector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("state dimensions differ");
  cplx acc = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

cplx expectation(const PauliSum& op, const Statevector& psi) {
  return inner(psi, apply_sum(op, psi));
}

Statevector apply_ansatz(const Ansatz& ansatz, const Statevector& psi) {
  if (ansatz.generators.size() != ansatz.angles.size()) {
    throw std::invalid_argument("ansatz generator/angle lengths differ");
  }
  Statevector out = psi;
  for (std::size_t mu = 0; mu < ansatz.size(); ++mu) {
    apply_exp_pauli_inplace(ansatz.angles[mu], ansatz.generators[mu], out);
  }
  return out;
}

}  // namespace qgf
