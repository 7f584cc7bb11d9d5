#include "qgf/avqite.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace qgf {

std::vector<PauliWord> odd_y_words(int n_qubits, const std::vector<int>& support) {
  std::vector<PauliWord> words;
  const std::size_t k = support.size();
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << k); ++pattern) {
    if (std::popcount(pattern) % 2 == 0) continue;
    PauliWord w(n_qubits);
    for (std::size_t i = 0; i < k; ++i) {
      w.set(support[i], (pattern >> i) & 1 ? PauliOp::Y : PauliOp::X);
    }
    words.push_back(w);
  }
  std::sort(words.begin(), words.end());
  return words;
}

std::vector<PauliWord> build_qubit_adapt_pool(const QubitLayout& layout) {
  const int n = layout.n_qubits();
  std::set<PauliWord> pool;

  std::vector<int> up, down;
  for (int s = 0; s < layout.n_sites(); ++s) {
    up.push_back(layout.qubit(s, Spin::Up));
    down.push_back(layout.qubit(s, Spin::Down));
  }

  auto add_pairs = [&](const std::vector<int>& qs) {
    for (std::size_t i = 0; i < qs.size(); ++i) {
      for (std::size_t j = i + 1; j < qs.size(); ++j) {
        for (const auto& w : odd_y_words(n, {qs[i], qs[j]})) pool.insert(w);
      }
    }
  };
  add_pairs(up);
  add_pairs(down);

  for (std::size_t i = 0; i < up.size(); ++i) {
    for (std::size_t j = i + 1; j < up.size(); ++j) {
      for (std::size_t a = 0; a < down.size(); ++a) {
        for (std::size_t b = a + 1; b < down.size(); ++b) {
          for (const auto& w : odd_y_words(n, {up[i], up[j], down[a], down[b]})) {
            pool.insert(w);
          }
        }
      }
    }
  }
  return {pool.begin(), pool.end()};
}

namespace {

struct StepQuantities {
  TangentFrame frame;
  Statevector h_psi;
  double energy = 0;
  double var_h = 0;
  Eigen::MatrixXd m;
  Eigen::VectorXd v;
};

StepQuantities evaluate(const Ansatz& ansatz, const Statevector& initial,
                        const PauliSum& h) {
  StepQuantities q{build_tangent_frame(ansatz, initial),
                   Statevector(initial.n_qubits()),
                   0.0,
                   0.0,
                   {},
                   {}};
  q.h_psi = apply_sum(h, q.frame.psi);
  q.energy = inner(q.frame.psi, q.h_psi).real();
  double h2 = 0;
  for (const cplx& a : q.h_psi.amplitudes()) h2 += std::norm(a);
  // Natural-gradient rate convention: the flow targets -2(H - <H>)|Psi>, so
  // theta_dot = M^+ (-grad E) carries the full energy gradient and the
  // variance entering the distance is scaled accordingly.
  q.var_h = 4.0 * (h2 - q.energy * q.energy);
  q.m = metric_matrix(q.frame);
  q.v = 2.0 * imagtime_force(q.frame, q.h_psi, q.energy);
  return q;
}

}  // namespace

IteResult run_avqite(const PauliSum& hamiltonian, const Statevector& initial,
                     const std::vector<PauliWord>& pool, const IteConfig& config,
                     const Statevector* reference) {
  if (config.distance_threshold <= 0 || config.dtau <= 0) {
    throw std::invalid_argument("imaginary-time config out of range");
  }
  IteResult result{{}, initial, 0.0, true, {}, {}, {}, {}, {}};

  const auto n_steps = static_cast<std::size_t>(std::llround(config.max_tau / config.dtau));
  double prev_energy = 0;
  bool have_prev = false;

  for (std::size_t step = 0; step <= n_steps; ++step) {
    const double tau = static_cast<double>(step) * config.dtau;
    StepQuantities q = evaluate(result.ansatz, initial, hamiltonian);
    EomSolution sol = solve_eom(q.m, q.v, config.tikhonov_lambda);
    double dist = mclachlan_distance(q.m, q.v, sol.theta_dot, q.var_h);

    // Grow the ansatz until the distance falls below threshold or no pool
    // operator improves it.
    while (dist > config.distance_threshold &&
           result.ansatz.size() < static_cast<std::size_t>(config.max_params)) {
      double best = dist;
      std::size_t best_idx = pool.size();
      TrialColumn best_col;
      for (std::size_t c = 0; c < pool.size(); ++c) {
        if (pool[c].is_identity()) continue;
        TrialColumn col = trial_column(q.frame, q.h_psi, q.energy, pool[c]);
        col.v_imag *= 2.0;  // natural-gradient rate, as above
        const TrialScore score =
            score_trial(q.m, q.v, col, false, q.var_h, config.tikhonov_lambda);
        if (score.distance < best - 1e-12) {
          best = score.distance;
          best_idx = c;
          best_col = col;
        }
      }
      if (best_idx == pool.size()) break;

      result.ansatz.generators.push_back(pool[best_idx]);
      result.ansatz.angles.push_back(0.0);
      result.insertions.emplace_back(tau, pool[best_idx]);

      // A zero-angle factor leaves the state and all existing derivative
      // states untouched; only the new column is added.
      Statevector d_new = apply_pauli(pool[best_idx], q.frame.psi);
      d_new *= cplx{0, -1};
      q.frame.derivs.push_back(std::move(d_new));
      q.frame.deriv_overlap.push_back(best_col.overlap);

      const Eigen::Index n = q.m.rows();
      q.m.conservativeResize(n + 1, n + 1);
      q.m.block(0, n, n, 1) = best_col.m_col;
      q.m.block(n, 0, 1, n) = best_col.m_col.transpose();
      q.m(n, n) = best_col.m_diag;
      q.v.conservativeResize(n + 1);
      q.v[n] = best_col.v_imag;

      sol = solve_eom(q.m, q.v, config.tikhonov_lambda);
      dist = mclachlan_distance(q.m, q.v, sol.theta_dot, q.var_h);
    }
    if (dist > config.distance_threshold) result.threshold_met = false;

    result.taus.push_back(tau);
    result.energies.push_back(q.energy);
    result.distances.push_back(dist);
    if (reference != nullptr) {
      const double overlap = std::abs(inner(q.frame.psi, *reference));
      result.infidelities.push_back(1.0 - overlap * overlap);
    }
    result.state = q.frame.psi;
    result.energy = q.energy;

    if (step == n_steps) break;

    const double step_norm = sol.theta_dot.size() == 0 ? 0.0 : sol.theta_dot.norm();
    if (config.stall_tol > 0 && have_prev &&
        std::abs(q.energy - prev_energy) < config.stall_tol &&
        step_norm * config.dtau < config.stall_tol) {
      break;
    }
    prev_energy = q.energy;
    have_prev = true;

    for (std::size_t mu = 0; mu < result.ansatz.size(); ++mu) {
      result.ansatz.angles[mu] += sol.theta_dot[static_cast<Eigen::Index>(mu)] * config.dtau;
    }
  }
  return result;
}

}  // namespace qgf
