#include "qgf/avqds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgf {

BranchSet make_branch_set(const PauliSum& ladder_op, std::string source) {
  const PauliSum simplified = ladder_op.simplified();
  BranchSet branch{{}, std::move(source)};
  branch.entries.assign(simplified.terms().begin(), simplified.terms().end());
  return branch;
}

BranchState prepare_branch_state(const Statevector& psi0, const BranchSet& branch) {
  Statevector acc(psi0.n_qubits());
  for (const auto& entry : branch.entries) {
    Statevector piece = apply_pauli(entry.word, psi0);
    piece *= entry.coeff;
    acc += piece;
  }
  const double norm = acc.norm();
  if (norm < 1e-12) {
    throw std::runtime_error("zero-norm branch state for " + branch.source);
  }
  acc *= 1.0 / norm;
  return {std::move(acc), norm};
}

std::vector<PauliWord> build_dynamics_pool(const PauliSum& hamiltonian,
                                           const BranchSet& branch_p,
                                           const BranchSet& branch_q) {
  std::vector<PauliWord> pool;
  for (const auto& term : hamiltonian.terms()) pool.push_back(term.word);
  auto add_branch = [&pool](const BranchSet& b) {
    for (const auto& entry : b.entries) {
      if (std::find(pool.begin(), pool.end(), entry.word) == pool.end()) {
        pool.push_back(entry.word);
      }
    }
  };
  add_branch(branch_p);
  add_branch(branch_q);
  return pool;
}

Ansatz Trajectory::ansatz_at(std::size_t step) const {
  if (step >= angles.size()) throw std::out_of_range("trajectory step");
  const auto& row = angles[step];
  Ansatz a;
  a.generators.assign(generators.begin(),
                      generators.begin() + static_cast<std::ptrdiff_t>(row.size()));
  a.angles = row;
  return a;
}

Statevector Trajectory::state_at(std::size_t step, const Statevector& psi_init) const {
  Statevector out = apply_ansatz(ansatz_at(step), psi_init);
  const double phi = phases.at(step);
  out *= cplx{std::cos(phi), std::sin(phi)};
  return out;
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
  q.var_h = h2 - q.energy * q.energy;
  q.m = metric_matrix(q.frame);
  q.v = realtime_force(q.frame, q.h_psi, q.energy);
  return q;
}

}  // namespace

Trajectory evolve(const Statevector& initial, const PauliSum& hamiltonian,
                  const std::vector<PauliWord>& pool, const DynConfig& config,
                  const ExactFlow& exact_flow) {
  if (config.l2_cut <= 0 || config.dt <= 0) {
    throw std::invalid_argument("dynamics config out of range");
  }
  if (std::abs(initial.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("dynamics expects a normalized initial state");
  }

  Trajectory traj;
  traj.n_qubits = initial.n_qubits();
  Ansatz ansatz;
  double phase = 0;

  const auto n_steps =
      static_cast<std::size_t>(std::llround(config.total_time / config.dt));
  for (std::size_t step = 0; step <= n_steps; ++step) {
    const double t = static_cast<double>(step) * config.dt;
    StepQuantities q = evaluate(ansatz, initial, hamiltonian);
    EomSolution sol = solve_eom(q.m, q.v, config.tikhonov_lambda);
    double dist = mclachlan_distance(q.m, q.v, sol.theta_dot, q.var_h);

    // Once the distance crosses the cut, grow greedily until no pool
    // operator yields a further improvement: parking just below the cut
    // would let the tracking error drift at sqrt(l2_cut) per unit time.
    const bool triggered = dist > config.l2_cut;
    while (triggered && ansatz.size() < static_cast<std::size_t>(config.max_params)) {
      double best = dist;
      std::size_t best_idx = pool.size();
      TrialColumn best_col;
      for (std::size_t c = 0; c < pool.size(); ++c) {
        if (pool[c].is_identity()) continue;  // generates only global phase
        const TrialColumn col = trial_column(q.frame, q.h_psi, q.energy, pool[c]);
        const TrialScore score =
            score_trial(q.m, q.v, col, true, q.var_h, config.tikhonov_lambda);
        if (score.distance < best - 1e-12) {
          best = score.distance;
          best_idx = c;
          best_col = col;
        }
      }
      if (best_idx == pool.size()) break;

      ansatz.generators.push_back(pool[best_idx]);
      ansatz.angles.push_back(0.0);
      traj.insertions.emplace_back(t, pool[best_idx]);

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
      q.v[n] = best_col.v_real;

      sol = solve_eom(q.m, q.v, config.tikhonov_lambda);
      dist = mclachlan_distance(q.m, q.v, sol.theta_dot, q.var_h);
    }

    traj.times.push_back(t);
    traj.angles.push_back(ansatz.angles);
    traj.phases.push_back(phase);
    traj.l2.push_back(dist);
    traj.var_h.push_back(2.0 * q.var_h);
    if (exact_flow) {
      const Statevector reference = exact_flow(initial, t);
      traj.delta.push_back(unitary_error(ansatz, phase, initial, reference));
    }

    if (step == n_steps) break;
    // Ray projection of the Schroedinger flow fixes the global phase rate.
    double phase_dot = -q.energy;
    for (std::size_t mu = 0; mu < ansatz.size(); ++mu) {
      phase_dot += sol.theta_dot[static_cast<Eigen::Index>(mu)] *
                   q.frame.deriv_overlap[mu].imag();
    }
    phase += phase_dot * config.dt;
    for (std::size_t mu = 0; mu < ansatz.size(); ++mu) {
      ansatz.angles[mu] += sol.theta_dot[static_cast<Eigen::Index>(mu)] * config.dt;
    }
  }
  traj.generators = ansatz.generators;
  return traj;
}

double unitary_error(const Ansatz& ansatz, double phase, const Statevector& psi_init,
                     const Statevector& exact_state) {
  Statevector diff = apply_ansatz(ansatz, psi_init);
  diff *= cplx{std::cos(phase), std::sin(phase)};
  double acc = 0;
  for (std::size_t i = 0; i < diff.dim(); ++i) {
    acc += std::norm(diff[i] - exact_state[i]);
  }
  return std::sqrt(acc);
}

}  // namespace qgf
