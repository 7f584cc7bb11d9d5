#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qgf/pauli.hpp"
#include "qgf/statevector.hpp"

namespace qgf {

/// Joint ancilla+system bitstring counts. The joint basis index places the
/// ancilla in the highest bit: index = (ancilla << n_system) | system, with
/// the system part little-endian in qubit number. Textual keys print the
/// ancilla first, then system qubits 0, 1, ...
struct Histogram {
  int n_system_bits = 0;
  std::vector<std::uint64_t> counts;  // dense, size 2^(n_system_bits + 1)
  std::uint64_t shots = 0;

  int n_bits() const { return n_system_bits + 1; }
  static std::string key_of(std::uint64_t index, int n_system_bits);
  static std::uint64_t index_of(const std::string& key);
};

/// Independent per-bit readout flips; probabilities indexed like the joint
/// basis bits (entry n_system = ancilla).
struct NoiseModel {
  std::vector<double> p01;  // P(read 1 | true 0)
  std::vector<double> p10;  // P(read 0 | true 1)

  static NoiseModel uniform(int n_bits, double p01, double p10);
  bool trivial() const;
};

enum class PhaseMode { Real, Imag };

struct OverlapDistribution {
  double p0 = 0;
  double p1 = 0;
  std::vector<double> joint;  // probabilities over joint bitstring indices
  int n_system_bits = 0;
};

/// Exact outcome distribution of the ancilla-controlled overlap circuit
///   H . cP1 . cU . cP2 . (phase) . H
/// so that p0 - p1 = Re <psi0|P2 U P1|psi0> (Imag mode inserts the extra
/// ancilla quarter turn and yields the imaginary part).
OverlapDistribution overlap_probabilities(const Statevector& psi0, const PauliWord& p1,
                                          const Ansatz& unitary, const PauliWord& p2,
                                          PhaseMode mode);

/// Multinomial draw over the joint distribution; reproducible under seed.
Histogram sample_counts(const OverlapDistribution& dist, std::uint64_t shots,
                        std::uint64_t seed);

/// Distribution-level readout channel (exact convolution of the per-bit flips).
std::vector<double> readout_convolve(const std::vector<double>& dist,
                                     const NoiseModel& model);

/// Shot-level readout noise: every recorded bit flips independently with its
/// model probability.
Histogram apply_readout_noise(const Histogram& hist, const NoiseModel& model,
                              std::uint64_t seed);

/// Ancilla statistics of a histogram: (counts with ancilla 0) / shots.
double estimate_p0(const Histogram& hist);

}  // namespace qgf
