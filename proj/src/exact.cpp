#include "qgf/exact.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qgf {

namespace {

constexpr int kDenseGuard = 12;
constexpr cplx kQuarterPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void check_guard(int n_qubits) {
  if (n_qubits > kDenseGuard) {
    throw std::invalid_argument("dense oracle limited to 12 qubits");
  }
}

Eigen::VectorXcd to_eigen(const Statevector& psi) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.dim()));
  for (std::size_t i = 0; i < psi.dim(); ++i) v[static_cast<Eigen::Index>(i)] = psi[i];
  return v;
}

Statevector from_eigen(const Eigen::VectorXcd& v, int n_qubits) {
  Statevector psi(n_qubits);
  for (Eigen::Index i = 0; i < v.size(); ++i) psi[static_cast<std::size_t>(i)] = v[i];
  return psi;
}

}  // namespace

Eigen::MatrixXcd dense_matrix(const PauliSum& op) {
  check_guard(op.n_qubits());
  const std::size_t dim = std::size_t{1} << op.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (const auto& term : op.terms()) {
    const std::uint64_t x = term.word.x_mask();
    const std::uint64_t z = term.word.z_mask();
    const cplx base = term.coeff * kQuarterPhases[std::popcount(x & z) & 3];
    for (std::size_t b = 0; b < dim; ++b) {
      const double sign = (std::popcount(b & z) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b)) += base * sign;
    }
  }
  return m;
}

EigenSystem eigensystem(const PauliSum& op) {
  const Eigen::MatrixXcd m = dense_matrix(op);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

GroundState ground_state(const PauliSum& hamiltonian, const QubitLayout& layout,
                         std::optional<Sector> sector) {
  check_guard(hamiltonian.n_qubits());
  const int n = hamiltonian.n_qubits();
  const std::size_t dim = std::size_t{1} << n;

  std::vector<std::size_t> basis;
  if (sector) {
    const std::uint64_t up = layout.spin_mask(Spin::Up);
    const std::uint64_t dn = layout.spin_mask(Spin::Down);
    for (std::size_t b = 0; b < dim; ++b) {
      const int n_up = std::popcount(b & up);
      const int n_dn = std::popcount(b & dn);
      if (n_up + n_dn == sector->n_electrons && n_up - n_dn == sector->sz_twice) {
        basis.push_back(b);
      }
    }
    if (basis.empty()) throw std::invalid_argument("empty symmetry sector");
  } else {
    basis.resize(dim);
    for (std::size_t b = 0; b < dim; ++b) basis[b] = b;
  }

  const Eigen::MatrixXcd full = dense_matrix(hamiltonian);
  const auto sdim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd sub(sdim, sdim);
  for (Eigen::Index i = 0; i < sdim; ++i) {
    for (Eigen::Index j = 0; j < sdim; ++j) {
      sub(i, j) = full(static_cast<Eigen::Index>(basis[static_cast<std::size_t>(i)]),
                       static_cast<Eigen::Index>(basis[static_cast<std::size_t>(j)]));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sub);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed");
  }

  GroundState gs{solver.eigenvalues()[0], Statevector(n), false};
  if (sdim > 1) {
    gs.degenerate = solver.eigenvalues()[1] - solver.eigenvalues()[0] < 1e-10;
  }
  for (Eigen::Index i = 0; i < sdim; ++i) {
    gs.state[basis[static_cast<std::size_t>(i)]] = solver.eigenvectors()(i, 0);
  }
  return gs;
}

ExactPropagator::ExactPropagator(const PauliSum& hamiltonian)
    : sys_(eigensystem(hamiltonian)), n_qubits_(hamiltonian.n_qubits()) {}

ExactPropagator::ExactPropagator(EigenSystem system)
    : sys_(std::move(system)) {
  n_qubits_ = std::countr_zero(static_cast<std::uint64_t>(sys_.vectors.rows()));
}

Statevector ExactPropagator::propagate(const Statevector& psi, double time) const {
  if (static_cast<Eigen::Index>(psi.dim()) != sys_.vectors.rows()) {
    throw std::invalid_argument("state dimension does not match propagator");
  }
  Eigen::VectorXcd coeffs = sys_.vectors.adjoint() * to_eigen(psi);
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    const double phase = -sys_.values[i] * time;
    coeffs[i] *= cplx{std::cos(phase), std::sin(phase)};
  }
  return from_eigen(sys_.vectors * coeffs, n_qubits_);
}

TimeGreens exact_greens_time(const EigenSystem& sys, double e0,
                             const Statevector& psi0, const PauliSum& c_p,
                             const PauliSum& c_q, const std::vector<double>& times) {
  // Particle side: bra and ket states c^dag_p|psi0>, c^dag_q|psi0>.
  const PauliSum cdag_p = c_p.adjoint();
  const PauliSum cdag_q = c_q.adjoint();
  const Eigen::VectorXcd v = sys.vectors.adjoint() * to_eigen(apply_sum(cdag_p, psi0));
  const Eigen::VectorXcd u = sys.vectors.adjoint() * to_eigen(apply_sum(cdag_q, psi0));
  // Hole side: c_q|psi0>, c_p|psi0>.
  const Eigen::VectorXcd a = sys.vectors.adjoint() * to_eigen(apply_sum(c_q, psi0));
  const Eigen::VectorXcd b = sys.vectors.adjoint() * to_eigen(apply_sum(c_p, psi0));

  TimeGreens out;
  out.times = times;
  out.greater.reserve(times.size());
  out.lesser.reserve(times.size());
  for (const double t : times) {
    cplx gg = 0, gl = 0;
    for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
      const double wg = (e0 - sys.values[i]) * t;
      gg += std::conj(v[i]) * u[i] * cplx{std::cos(wg), std::sin(wg)};
      const double wl = (sys.values[i] - e0) * t;
      gl += std::conj(a[i]) * b[i] * cplx{std::cos(wl), std::sin(wl)};
    }
    out.greater.push_back(cplx{0, -1} * gg);
    out.lesser.push_back(cplx{0, 1} * gl);
  }
  return out;
}

std::vector<cplx> exact_greens_omega(const EigenSystem& sys, double e0,
                                     const Statevector& psi0, const PauliSum& c_p,
                                     const PauliSum& c_q,
                                     const std::vector<double>& omega, double zeta) {
  if (zeta <= 0) throw std::invalid_argument("damping must be positive");
  const PauliSum cdag_p = c_p.adjoint();
  const PauliSum cdag_q = c_q.adjoint();
  const Eigen::VectorXcd v = sys.vectors.adjoint() * to_eigen(apply_sum(cdag_p, psi0));
  const Eigen::VectorXcd u = sys.vectors.adjoint() * to_eigen(apply_sum(cdag_q, psi0));
  const Eigen::VectorXcd a = sys.vectors.adjoint() * to_eigen(apply_sum(c_q, psi0));
  const Eigen::VectorXcd b = sys.vectors.adjoint() * to_eigen(apply_sum(c_p, psi0));

  std::vector<cplx> out;
  out.reserve(omega.size());
  for (const double w : omega) {
    cplx g = 0;
    for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
      g += std::conj(v[i]) * u[i] / cplx{w + e0 - sys.values[i], zeta};
      g += std::conj(a[i]) * b[i] / cplx{w - e0 + sys.values[i], zeta};
    }
    out.push_back(g);
  }
  return out;
}

}  // namespace qgf
