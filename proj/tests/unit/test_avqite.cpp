#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "qgf/avqite.hpp"
#include "qgf/exact.hpp"

using namespace qgf;

namespace {

int y_count(const PauliWord& w) {
  int count = 0;
  for (int q = 0; q < w.n_qubits(); ++q) {
    if (w.op(q) == PauliOp::Y) ++count;
  }
  return count;
}

}  // namespace

TEST_SUITE_BEGIN("avqite");

TEST_CASE("odd-Y enumeration on pairs and singles") {
  const auto pair_words = odd_y_words(2, {0, 1});
  REQUIRE(pair_words.size() == 2);
  CHECK(std::find(pair_words.begin(), pair_words.end(), PauliWord("XY")) !=
        pair_words.end());
  CHECK(std::find(pair_words.begin(), pair_words.end(), PauliWord("YX")) !=
        pair_words.end());

  const auto single = odd_y_words(2, {1});
  REQUIRE(single.size() == 1);
  CHECK(single[0] == PauliWord("IY"));

  const auto quad = odd_y_words(4, {0, 1, 2, 3});
  CHECK(quad.size() == 8);  // one or three Y placements
}

TEST_CASE("qubit-adapt pool structure") {
  const QubitLayout layout(2);
  const auto pool = build_qubit_adapt_pool(layout);
  // Two same-spin pairs with two words each, one quadruple with eight.
  CHECK(pool.size() == 12);
  for (const auto& w : pool) {
    CHECK(y_count(w) % 2 == 1);
    for (int q = 0; q < w.n_qubits(); ++q) {
      CHECK(w.op(q) != PauliOp::Z);
    }
    // Non-diagonal action: anticommutes with Z somewhere on its support.
    bool anti = false;
    for (int q = 0; q < w.n_qubits(); ++q) {
      if (w.op(q) == PauliOp::I) continue;
      anti |= !commutes(w, PauliWord::single(w.n_qubits(), q, PauliOp::Z));
    }
    CHECK(anti);
  }
  // Deterministic and duplicate free.
  for (std::size_t i = 1; i < pool.size(); ++i) CHECK(pool[i - 1] < pool[i]);

  const QubitLayout l4(4);
  const auto pool4 = build_qubit_adapt_pool(l4);
  // 12 same-spin pairs * 2 words + 36 quadruples * 8 words.
  CHECK(pool4.size() == 12 * 2 + 36 * 8);
}

TEST_CASE("single qubit imaginary-time step descends the energy closed form") {
  // H = -Z has ground state |0>; the flow through e^{-i theta Y}|0> must pull
  // theta from 0.1 back toward zero, lowering the energy every step.
  PauliSum h(1);
  h.add(-1.0, PauliWord("Z"));
  const Statevector zero = Statevector::basis_state(1, 0);
  Ansatz a;
  a.generators = {PauliWord("Y")};
  a.angles = {0.1};

  double prev = 1e9;
  for (int step = 0; step < 40; ++step) {
    const TangentFrame frame = build_tangent_frame(a, zero);
    const Statevector h_psi = apply_sum(h, frame.psi);
    const double energy = inner(frame.psi, h_psi).real();
    CHECK(energy < prev + 1e-12);
    prev = energy;
    const Eigen::MatrixXd m = metric_matrix(frame);
    const Eigen::VectorXd v = imagtime_force(frame, h_psi, energy);
    const EomSolution sol = solve_eom(m, v, 1e-6);
    a.angles[0] += sol.theta_dot[0] * 0.05;
  }
  CHECK(prev == doctest::Approx(-1.0).epsilon(1e-4));
  CHECK(std::abs(a.angles[0]) < 1e-2);
}

TEST_CASE("an exact eigenstate generates no imaginary-time motion") {
  PauliSum h(1);
  h.add(-1.0, PauliWord("Z"));
  const Statevector zero = Statevector::basis_state(1, 0);
  Ansatz a;
  a.generators = {PauliWord("Y")};
  a.angles = {0.0};
  const TangentFrame frame = build_tangent_frame(a, zero);
  const Statevector h_psi = apply_sum(h, frame.psi);
  const double energy = inner(frame.psi, h_psi).real();
  const Eigen::VectorXd v = imagtime_force(frame, h_psi, energy);
  CHECK(v.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("two-site chain converges to the exact ground state") {
  const QubitLayout layout(2);
  const HubbardSpec spec = HubbardSpec::half_filled(2, 4.0);
  const PauliSum h = build_hamiltonian(spec, layout);
  const GroundState exact = ground_state(h, layout, Sector{2, 0});

  IteConfig config;
  config.max_tau = 10.0;
  const IteResult result = run_avqite(h, segregated_product_state(layout),
                                      build_qubit_adapt_pool(layout), config,
                                      &exact.state);
  CHECK(result.threshold_met);
  CHECK(result.energy == doctest::Approx(exact.energy).epsilon(1e-6));
  REQUIRE_FALSE(result.infidelities.empty());
  CHECK(result.infidelities.back() < 1e-4);
  // A handful of pool operators suffices at this size.
  CHECK(result.ansatz.size() <= 8);

  // Monotonicity within slack: energy per step, infidelity per step.
  for (std::size_t i = 1; i < result.energies.size(); ++i) {
    CHECK(result.energies[i] <= result.energies[i - 1] + 1e-9);
    CHECK(result.infidelities[i] <= result.infidelities[i - 1] + 1e-8);
  }
}

TEST_CASE("the flow conserves electron number and spin projection") {
  const QubitLayout layout(2);
  const HubbardSpec spec = HubbardSpec::half_filled(2, 4.0);
  const PauliSum h = build_hamiltonian(spec, layout);
  const PauliSum n_op = total_number(layout);
  const PauliSum sz_op = total_sz(layout);

  IteConfig config;
  config.max_tau = 4.0;
  const Statevector start = segregated_product_state(layout);
  CHECK(std::abs(expectation(n_op, start) - cplx{2, 0}) < 1e-12);

  const IteResult result =
      run_avqite(h, start, build_qubit_adapt_pool(layout), config);
  CHECK(std::abs(expectation(n_op, result.state) - cplx{2, 0}) < 1e-8);
  CHECK(std::abs(expectation(sz_op, result.state)) < 1e-8);
}

TEST_CASE("config validation") {
  const QubitLayout layout(2);
  const PauliSum h = build_hamiltonian(HubbardSpec::half_filled(2, 4.0), layout);
  IteConfig bad;
  bad.dtau = 0;
  CHECK_THROWS_AS(run_avqite(h, segregated_product_state(layout),
                             build_qubit_adapt_pool(layout), bad),
                  std::invalid_argument);
}

TEST_SUITE_END();
