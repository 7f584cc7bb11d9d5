#include "qgf/shots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgf {

std::string Histogram::key_of(std::uint64_t index, int n_system_bits) {
  std::string key(static_cast<std::size_t>(n_system_bits) + 1, '0');
  if ((index >> n_system_bits) & 1) key[0] = '1';
  for (int b = 0; b < n_system_bits; ++b) {
    if ((index >> b) & 1) key[static_cast<std::size_t>(b) + 1] = '1';
  }
  return key;
}

std::uint64_t Histogram::index_of(const std::string& key) {
  if (key.empty()) throw std::invalid_argument("empty bitstring key");
  std::uint64_t index = 0;
  const int n_system = static_cast<int>(key.size()) - 1;
  if (key[0] == '1') index |= std::uint64_t{1} << n_system;
  for (int b = 0; b < n_system; ++b) {
    const char c = key[static_cast<std::size_t>(b) + 1];
    if (c == '1') index |= std::uint64_t{1} << b;
    else if (c != '0') throw std::invalid_argument("bad bitstring key: " + key);
  }
  return index;
}

NoiseModel NoiseModel::uniform(int n_bits, double p01, double p10) {
  if (p01 < 0 || p01 >= 0.5 || p10 < 0 || p10 >= 0.5) {
    throw std::invalid_argument("readout flip probabilities must lie in [0, 0.5)");
  }
  return {std::vector<double>(static_cast<std::size_t>(n_bits), p01),
          std::vector<double>(static_cast<std::size_t>(n_bits), p10)};
}

bool NoiseModel::trivial() const {
  for (double p : p01) {
    if (p != 0) return false;
  }
  for (double p : p10) {
    if (p != 0) return false;
  }
  return true;
}

OverlapDistribution overlap_probabilities(const Statevector& psi0, const PauliWord& p1,
                                          const Ansatz& unitary, const PauliWord& p2,
                                          PhaseMode mode) {
  if (p1.n_qubits() != psi0.n_qubits() || p2.n_qubits() != psi0.n_qubits()) {
    throw std::invalid_argument("operator/state qubit counts differ");
  }
  // Controlled branch: |1> side carries P2 U P1 |psi0>, |0> side keeps psi0.
  Statevector branch1 = apply_pauli(p2, apply_ansatz(unitary, apply_pauli(p1, psi0)));
  if (mode == PhaseMode::Imag) branch1 *= cplx{0, -1};

  const std::size_t dim = psi0.dim();
  OverlapDistribution dist;
  dist.n_system_bits = psi0.n_qubits();
  dist.joint.assign(dim * 2, 0.0);
  double p0 = 0, p1_prob = 0;
  for (std::size_t b = 0; b < dim; ++b) {
    const cplx plus = 0.5 * (psi0[b] + branch1[b]);
    const cplx minus = 0.5 * (psi0[b] - branch1[b]);
    dist.joint[b] = std::norm(plus);
    dist.joint[dim + b] = std::norm(minus);
    p0 += dist.joint[b];
    p1_prob += dist.joint[dim + b];
  }
  dist.p0 = p0;
  dist.p1 = p1_prob;
  return dist;
}

Histogram sample_counts(const OverlapDistribution& dist, std::uint64_t shots,
                        std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shot count must be positive");
  double total = 0;
  for (double p : dist.joint) total += p;
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument("distribution is not normalized");
  }

  Histogram hist;
  hist.n_system_bits = dist.n_system_bits;
  hist.counts.assign(dist.joint.size(), 0);
  hist.shots = shots;

  std::mt19937_64 rng(seed);
  std::uint64_t remaining = shots;
  double mass = total;
  for (std::size_t i = 0; i < dist.joint.size() && remaining > 0; ++i) {
    const double p = dist.joint[i];
    if (p <= 0) continue;
    if (i + 1 == dist.joint.size() || p >= mass) {
      hist.counts[i] = remaining;
      remaining = 0;
      break;
    }
    const double prob = std::min(1.0, std::max(0.0, p / mass));
    std::binomial_distribution<std::uint64_t> binom(remaining, prob);
    const std::uint64_t n = binom(rng);
    hist.counts[i] = n;
    remaining -= n;
    mass -= p;
  }
  if (remaining > 0) hist.counts.back() += remaining;
  return hist;
}

std::vector<double> readout_convolve(const std::vector<double>& dist,
                                     const NoiseModel& model) {
  std::vector<double> out = dist;
  const std::size_t dim = dist.size();
  std::size_t n_bits = 0;
  while ((std::size_t{1} << n_bits) < dim) ++n_bits;
  if ((std::size_t{1} << n_bits) != dim) {
    throw std::invalid_argument("distribution size is not a power of two");
  }
  if (model.p01.size() < n_bits || model.p10.size() < n_bits) {
    throw std::invalid_argument("noise model covers too few bits");
  }
  std::vector<double> next(dim);
  for (std::size_t bit = 0; bit < n_bits; ++bit) {
    const double p01 = model.p01[bit];
    const double p10 = model.p10[bit];
    const std::uint64_t mask = std::uint64_t{1} << bit;
    for (std::size_t b = 0; b < dim; ++b) {
      const double stay = (b & mask) ? 1.0 - p10 : 1.0 - p01;
      const double flip_in = (b & mask) ? p01 : p10;
      next[b] = stay * out[b] + flip_in * out[b ^ mask];
    }
    out.swap(next);
  }
  return out;
}

Histogram apply_readout_noise(const Histogram& hist, const NoiseModel& model,
                              std::uint64_t seed) {
  const std::size_t n_bits = static_cast<std::size_t>(hist.n_bits());
  if (model.p01.size() < n_bits || model.p10.size() < n_bits) {
    throw std::invalid_argument("noise model covers too few bits");
  }
  Histogram out;
  out.n_system_bits = hist.n_system_bits;
  out.counts.assign(hist.counts.size(), 0);
  out.shots = hist.shots;
  if (model.trivial()) {
    out.counts = hist.counts;
    return out;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    for (std::uint64_t s = 0; s < hist.counts[b]; ++s) {
      std::uint64_t read = b;
      for (std::size_t bit = 0; bit < n_bits; ++bit) {
        const bool one = (b >> bit) & 1;
        const double p_flip = one ? model.p10[bit] : model.p01[bit];
        if (p_flip > 0 && unit(rng) < p_flip) read ^= std::uint64_t{1} << bit;
      }
      ++out.counts[read];
    }
  }
  return out;
}

double estimate_p0(const Histogram& hist) {
  if (hist.shots == 0) throw std::invalid_argument("empty histogram");
  const std::size_t half = hist.counts.size() / 2;
  std::uint64_t zeros = 0;
  for (std::size_t i = 0; i < half; ++i) zeros += hist.counts[i];
  return static_cast<double>(zeros) / static_cast<double>(hist.shots);
}

}  // namespace qgf
