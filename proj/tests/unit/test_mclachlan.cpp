#include <cmath>
#include <random>

#include "doctest.h"
#include "qgf/mclachlan.hpp"

using namespace qgf;

namespace {

Statevector random_state(std::mt19937_64& rng, int n_qubits) {
  std::normal_distribution<double> gauss(0, 1);
  Statevector psi(n_qubits);
  for (std::size_t i = 0; i < psi.dim(); ++i) psi[i] = {gauss(rng), gauss(rng)};
  psi.normalize();
  return psi;
}

PauliWord random_word(std::mt19937_64& rng, int n_qubits) {
  std::uniform_int_distribution<int> pick(0, 3);
  PauliWord w(n_qubits);
  bool nontrivial = false;
  while (!nontrivial) {
    for (int q = 0; q < n_qubits; ++q) {
      const auto op = static_cast<PauliOp>(pick(rng));
      w.set(q, op);
      nontrivial |= op != PauliOp::I;
    }
  }
  return w;
}

Ansatz random_ansatz(std::mt19937_64& rng, int n_qubits, int n_params) {
  std::uniform_real_distribution<double> angle(-1.0, 1.0);
  Ansatz a;
  for (int k = 0; k < n_params; ++k) {
    a.generators.push_back(random_word(rng, n_qubits));
    a.angles.push_back(angle(rng));
  }
  return a;
}

PauliSum random_hermitian(std::mt19937_64& rng, int n_qubits, int n_terms) {
  std::uniform_real_distribution<double> coeff(-1, 1);
  PauliSum h(n_qubits);
  for (int k = 0; k < n_terms; ++k) h.add(coeff(rng), random_word(rng, n_qubits));
  return h.simplified();
}

Statevector state_at(const Ansatz& base, const Eigen::VectorXd& shift,
                     const Statevector& psi_init) {
  Ansatz shifted = base;
  for (std::size_t mu = 0; mu < shifted.size(); ++mu) {
    shifted.angles[mu] += shift[static_cast<Eigen::Index>(mu)];
  }
  return apply_ansatz(shifted, psi_init);
}

// Central-difference derivative states, the independent oracle for the
// analytic tangent frame.
std::vector<Statevector> fd_derivatives(const Ansatz& ansatz, const Statevector& psi,
                                        double step) {
  std::vector<Statevector> out;
  const auto n = static_cast<Eigen::Index>(ansatz.size());
  for (Eigen::Index mu = 0; mu < n; ++mu) {
    Eigen::VectorXd shift = Eigen::VectorXd::Zero(n);
    shift[mu] = step;
    Statevector plus = state_at(ansatz, shift, psi);
    shift[mu] = -step;
    const Statevector minus = state_at(ansatz, shift, psi);
    for (std::size_t i = 0; i < plus.dim(); ++i) {
      plus[i] = (plus[i] - minus[i]) / (2 * step);
    }
    out.push_back(std::move(plus));
  }
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("mclachlan");

TEST_CASE("analytic derivative states match central differences") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 2;
    const Statevector psi = random_state(rng, n);
    const Ansatz ansatz = random_ansatz(rng, n, 3 + trial % 3);
    const TangentFrame frame = build_tangent_frame(ansatz, psi);
    const auto fd = fd_derivatives(ansatz, psi, 1e-5);
    for (std::size_t mu = 0; mu < ansatz.size(); ++mu) {
      double diff = 0;
      for (std::size_t i = 0; i < psi.dim(); ++i) {
        diff += std::norm(frame.derivs[mu][i] - fd[mu][i]);
      }
      CHECK(std::sqrt(diff) < 1e-8);
    }
  }
}

TEST_CASE("single parameter metric is the generator variance") {
  std::mt19937_64 rng(32);
  const Statevector psi = random_state(rng, 3);
  const PauliWord gen = random_word(rng, 3);
  Ansatz a;
  a.generators = {gen};
  a.angles = {0.37};
  const TangentFrame frame = build_tangent_frame(a, psi);
  const Eigen::MatrixXd m = metric_matrix(frame);

  PauliSum gen_sum(3);
  gen_sum.add(1.0, gen);
  const double mean = expectation(gen_sum, psi).real();
  CHECK(m(0, 0) == doctest::Approx(1.0 - mean * mean).epsilon(1e-10));
}

TEST_CASE("identity-like generators produce vanishing rows") {
  std::mt19937_64 rng(33);
  const Statevector psi = random_state(rng, 2);
  Ansatz a;
  a.generators = {PauliWord(2)};  // identity word
  a.angles = {0.4};
  const TangentFrame frame = build_tangent_frame(a, psi);
  const Eigen::MatrixXd m = metric_matrix(frame);
  CHECK(std::abs(m(0, 0)) < 1e-12);

  PauliSum h(2);
  h.add(0.8, PauliWord("ZI"));
  const Statevector h_psi = apply_sum(h, frame.psi);
  const double energy = inner(frame.psi, h_psi).real();
  const Eigen::VectorXd v = realtime_force(frame, h_psi, energy);
  CHECK(std::abs(v[0]) < 1e-12);
}

TEST_CASE("metric matches finite differences of the overlap function") {
  // M_{mu nu} via second derivatives of |<Psi(theta)|Psi(theta')>|-type
  // overlaps: Re<d_mu|d_nu> from cross differences of the two slots plus the
  // phase product from first derivatives.
  std::mt19937_64 rng(34);
  const int n = 3;
  const Statevector psi = random_state(rng, n);
  const Ansatz ansatz = random_ansatz(rng, n, 4);
  const TangentFrame frame = build_tangent_frame(ansatz, psi);
  const Eigen::MatrixXd m = metric_matrix(frame);
  CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-12);

  const double step = 1e-5;
  const auto fd = fd_derivatives(ansatz, psi, step);
  const Statevector base = apply_ansatz(ansatz, psi);
  for (Eigen::Index mu = 0; mu < 4; ++mu) {
    for (Eigen::Index nu = 0; nu < 4; ++nu) {
      const cplx gram = inner(fd[static_cast<std::size_t>(mu)],
                              fd[static_cast<std::size_t>(nu)]);
      const cplx omu = inner(fd[static_cast<std::size_t>(mu)], base);
      const cplx onu = inner(fd[static_cast<std::size_t>(nu)], base);
      const double expected = (gram + omu * onu).real();
      CHECK(std::abs(m(mu, nu) - expected) < 1e-6);
    }
  }
}

TEST_CASE("force vector matches finite differences of the flow projection") {
  std::mt19937_64 rng(35);
  const int n = 3;
  const Statevector psi = random_state(rng, n);
  const Ansatz ansatz = random_ansatz(rng, n, 4);
  const PauliSum h = random_hermitian(rng, n, 5);
  const PauliSum herm = (h + h.adjoint()).simplified();

  const TangentFrame frame = build_tangent_frame(ansatz, psi);
  const Statevector h_psi = apply_sum(herm, frame.psi);
  const double energy = inner(frame.psi, h_psi).real();
  const Eigen::VectorXd v = realtime_force(frame, h_psi, energy);
  const Eigen::VectorXd v_imag = imagtime_force(frame, h_psi, energy);

  const auto fd = fd_derivatives(ansatz, psi, 1e-5);
  for (Eigen::Index mu = 0; mu < 4; ++mu) {
    const cplx bracket = inner(fd[static_cast<std::size_t>(mu)], h_psi) -
                         inner(fd[static_cast<std::size_t>(mu)], frame.psi) * energy;
    CHECK(std::abs(v[mu] - bracket.imag()) < 1e-6);
    CHECK(std::abs(v_imag[mu] + bracket.real()) < 1e-6);
  }
}

TEST_CASE("eigenstates exert no real-time force on a trivial ansatz") {
  PauliSum h(2);
  h.add(1.0, PauliWord("ZI"));
  h.add(0.5, PauliWord("IZ"));
  const Statevector basis = Statevector::basis_state(2, 0b01);
  Ansatz a;
  a.generators = {PauliWord("XZ"), PauliWord("YI")};
  a.angles = {0.0, 0.0};
  const TangentFrame frame = build_tangent_frame(a, basis);
  const Statevector h_psi = apply_sum(h, frame.psi);
  const double energy = inner(frame.psi, h_psi).real();
  const Eigen::VectorXd v = realtime_force(frame, h_psi, energy);
  CHECK(v.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("regularized solve: identity metric and rank-deficient systems") {
  const double lambda = 1e-6;
  Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(3, 3);
  Eigen::VectorXd v(3);
  v << 1.0, -2.0, 0.5;
  const EomSolution sol = solve_eom(eye, v, lambda);
  for (int i = 0; i < 3; ++i) {
    CHECK(sol.theta_dot[i] == doctest::Approx(v[i] / (1 + lambda)).epsilon(1e-12));
  }

  // Singular M with V in its range: residual stays at the lambda scale.
  Eigen::MatrixXd m(2, 2);
  m << 1, 1, 1, 1;
  Eigen::VectorXd w(2);
  w << 2, 2;  // = M * (1,1)
  const EomSolution rank1 = solve_eom(m, w, lambda);
  CHECK(rank1.residual <= lambda * rank1.theta_dot.norm() + 1e-12);
  CHECK((m * rank1.theta_dot - w).norm() < 1e-5);
}

TEST_CASE("regularized solution approaches the pseudoinverse as lambda shrinks") {
  std::mt19937_64 rng(36);
  std::normal_distribution<double> gauss(0, 1);
  Eigen::MatrixXd a(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) a(i, j) = gauss(rng);
  }
  const Eigen::MatrixXd spd = a * a.transpose() + Eigen::MatrixXd::Identity(4, 4);
  Eigen::VectorXd v(4);
  for (int i = 0; i < 4; ++i) v[i] = gauss(rng);
  const Eigen::VectorXd direct = spd.ldlt().solve(v);

  double prev_err = 1e9;
  for (double lambda : {1e-4, 1e-6, 1e-8}) {
    const EomSolution sol = solve_eom(spd, v, lambda);
    const double err = (sol.theta_dot - direct).norm();
    CHECK(err < prev_err + 1e-14);
    prev_err = err;
  }
  CHECK(prev_err < 1e-7);
}

TEST_CASE("distance is nonnegative, zero velocity gives twice the variance") {
  std::mt19937_64 rng(37);
  const int n = 3;
  const Statevector psi = random_state(rng, n);
  const Ansatz ansatz = random_ansatz(rng, n, 4);
  const PauliSum h = random_hermitian(rng, n, 4);
  const PauliSum herm = (h + h.adjoint()).simplified();

  const TangentFrame frame = build_tangent_frame(ansatz, psi);
  const Statevector h_psi = apply_sum(herm, frame.psi);
  const double energy = inner(frame.psi, h_psi).real();
  double h2 = 0;
  for (const cplx& amp : h_psi.amplitudes()) h2 += std::norm(amp);
  const double var = h2 - energy * energy;

  const Eigen::MatrixXd m = metric_matrix(frame);
  const Eigen::VectorXd v = realtime_force(frame, h_psi, energy);
  const EomSolution sol = solve_eom(m, v, 1e-6);
  const double dist = mclachlan_distance(m, v, sol.theta_dot, var);
  CHECK(dist >= -1e-10);

  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(v.size());
  CHECK(mclachlan_distance(m, v, zero, var) == doctest::Approx(2 * var).epsilon(1e-12));
}

TEST_CASE("perfectly representable flow drives the distance to zero") {
  // Ansatz generator equals the (traceless) Hamiltonian: exact flow lies in
  // the tangent space, including the global phase direction.
  PauliSum h(1);
  h.add(0.8, PauliWord("X"));
  Ansatz a;
  a.generators = {PauliWord("X")};
  a.angles = {0.3};
  const Statevector psi = Statevector::basis_state(1, 0);
  const TangentFrame frame = build_tangent_frame(a, psi);
  const Statevector h_psi = apply_sum(h, frame.psi);
  const double energy = inner(frame.psi, h_psi).real();
  double h2 = 0;
  for (const cplx& amp : h_psi.amplitudes()) h2 += std::norm(amp);
  const double var = h2 - energy * energy;
  const Eigen::MatrixXd m = metric_matrix(frame);
  const Eigen::VectorXd v = realtime_force(frame, h_psi, energy);
  const EomSolution sol = solve_eom(m, v, 1e-6);
  CHECK(sol.theta_dot[0] == doctest::Approx(0.8).epsilon(1e-4));
  CHECK(mclachlan_distance(m, v, sol.theta_dot, var) < 1e-9);
}

TEST_CASE("identity shifts of the Hamiltonian do not change the equations") {
  std::mt19937_64 rng(38);
  const int n = 2;
  const Statevector psi = random_state(rng, n);
  const Ansatz ansatz = random_ansatz(rng, n, 3);
  PauliSum h(n);
  h.add(0.9, PauliWord("XZ"));
  h.add(-0.4, PauliWord("ZI"));
  PauliSum shifted = h;
  shifted.add(3.7, PauliWord(n));

  const TangentFrame frame = build_tangent_frame(ansatz, psi);
  const Statevector h_psi = apply_sum(h, frame.psi);
  const Statevector h_psi_shifted = apply_sum(shifted, frame.psi);
  const double e1 = inner(frame.psi, h_psi).real();
  const double e2 = inner(frame.psi, h_psi_shifted).real();
  const Eigen::VectorXd v1 = realtime_force(frame, h_psi, e1);
  const Eigen::VectorXd v2 = realtime_force(frame, h_psi_shifted, e2);
  CHECK((v1 - v2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_SUITE_END();
