#include "qgf/resources.hpp"

#include <cmath>
#include <stdexcept>

namespace qgf {

CnotBound cnot_upper_bound(const Ansatz& ansatz) {
  std::vector<int> weights;
  weights.reserve(ansatz.generators.size());
  for (const auto& g : ansatz.generators) weights.push_back(g.weight());
  return cnot_upper_bound(weights);
}

CnotBound cnot_upper_bound(const std::vector<int>& generator_weights) {
  CnotBound bound;
  for (const int w : generator_weights) {
    if (w > 1) bound.unitary += 2 * (w - 1);
  }
  bound.controlled =
      bound.unitary + 2 * static_cast<std::int64_t>(generator_weights.size());
  return bound;
}

std::int64_t circuits_per_step(int n_params, int n_ham_terms, bool adaptive) {
  if (n_params < 0 || n_ham_terms < 0) {
    throw std::invalid_argument("counts must be nonnegative");
  }
  const std::int64_t np = n_params;
  const std::int64_t nh = n_ham_terms;
  std::int64_t circuits = 4 * (np * np + 2 * np + 2 * np * nh + nh * nh);
  if (adaptive) circuits += 8 * (nh + 4) * nh;
  return circuits;
}

double trotter_unitaries(int n_ham_terms, double delta, double time) {
  if (delta <= 0) throw std::invalid_argument("accuracy must be positive");
  if (time < 0) throw std::invalid_argument("time must be nonnegative");
  const double nh = n_ham_terms;
  return 2.0 * nh * (4.0 * std::sqrt(5.0) / std::sqrt(delta)) *
         std::pow(nh * time, 1.5);
}

double vha_cnots(int n_sites, int layers) {
  if (n_sites <= 0 || layers < 0) throw std::invalid_argument("bad VHA parameters");
  const double n = n_sites;
  return layers * (8.0 * std::pow(n, 1.5) + n - 4.0 * std::sqrt(n));
}

}  // namespace qgf
