#include "qgf/greens.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgf {

namespace {

void check_grids(const GreensSeries& a, const GreensSeries& b) {
  if (a.times.size() != b.times.size()) {
    throw std::invalid_argument("series grids differ");
  }
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    if (std::abs(a.times[i] - b.times[i]) > 1e-12) {
      throw std::invalid_argument("series grids differ");
    }
  }
}

}  // namespace

std::vector<cplx> gtilde_series(const Trajectory& traj, const Statevector& psi0,
                                const BranchSet& branch_p, const BranchSet& branch_q) {
  const BranchState bra = prepare_branch_state(psi0, branch_p);
  const BranchState ket = prepare_branch_state(psi0, branch_q);
  const double scale = bra.norm * ket.norm;

  std::vector<cplx> out;
  out.reserve(traj.times.size());
  for (std::size_t step = 0; step < traj.times.size(); ++step) {
    const Statevector evolved = traj.state_at(step, ket.state);
    out.push_back(scale * inner(bra.state, evolved));
  }
  return out;
}

std::vector<cplx> gtilde_series_branch_sum(const Trajectory& traj,
                                           const Statevector& psi0,
                                           const BranchSet& branch_p,
                                           const BranchSet& branch_q) {
  std::vector<cplx> out;
  out.reserve(traj.times.size());
  for (std::size_t step = 0; step < traj.times.size(); ++step) {
    const Ansatz ansatz = traj.ansatz_at(step);
    const double phi = traj.phases.at(step);
    const cplx phase_factor{std::cos(phi), std::sin(phi)};
    cplx acc = 0;
    for (const auto& pa : branch_p.entries) {
      const Statevector bra = apply_pauli(pa.word, psi0);
      for (const auto& qb : branch_q.entries) {
        Statevector ket = apply_ansatz(ansatz, apply_pauli(qb.word, psi0));
        ket *= phase_factor;
        // The bra side carries the annihilation expansion: conjugates of the
        // creation coefficients supplied in branch_p.
        acc += std::conj(pa.coeff) * qb.coeff * inner(bra, ket);
      }
    }
    out.push_back(acc);
  }
  return out;
}

GreensSeries g_greater(const std::vector<double>& times, const std::vector<cplx>& gtilde,
                       double e_phase, int p, int q) {
  if (times.size() != gtilde.size()) {
    throw std::invalid_argument("series grids differ");
  }
  GreensSeries out;
  out.times = times;
  out.kind = GreensKind::Greater;
  out.p = p;
  out.q = q;
  out.values.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double phase = e_phase * times[i];
    out.values.push_back(cplx{0, -1} * cplx{std::cos(phase), std::sin(phase)} *
                         gtilde[i]);
  }
  return out;
}

GreensSeries g_lesser_symmetry(const GreensSeries& greater, bool ph_symmetric) {
  if (!ph_symmetric) {
    throw std::invalid_argument(
        "particle-hole shortcut for the lesser function requires mu = U/2");
  }
  GreensSeries out = greater;
  out.kind = GreensKind::Lesser;
  for (auto& v : out.values) v = std::conj(v);
  return out;
}

GreensSeries g_lesser_direct(const std::vector<double>& times,
                             const std::vector<cplx>& hole_overlap, double e_phase,
                             int p, int q) {
  if (times.size() != hole_overlap.size()) {
    throw std::invalid_argument("series grids differ");
  }
  GreensSeries out;
  out.times = times;
  out.kind = GreensKind::Lesser;
  out.p = p;
  out.q = q;
  out.values.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double phase = -e_phase * times[i];
    out.values.push_back(cplx{0, 1} * cplx{std::cos(phase), std::sin(phase)} *
                         hole_overlap[i]);
  }
  return out;
}

GreensSeries retarded(const GreensSeries& greater, const GreensSeries& lesser) {
  check_grids(greater, lesser);
  GreensSeries out;
  out.times = greater.times;
  out.kind = GreensKind::Retarded;
  out.p = greater.p;
  out.q = greater.q;
  out.momentum = greater.momentum;
  out.values.reserve(greater.values.size());
  for (std::size_t i = 0; i < greater.values.size(); ++i) {
    out.values.push_back(greater.values[i] - lesser.values[i]);
  }
  return out;
}

GreensSeries momentum_combine(const std::vector<std::vector<GreensSeries>>& pair_series,
                              double k, int n_sites) {
  if (static_cast<int>(pair_series.size()) != n_sites) {
    throw std::invalid_argument("pair series matrix has the wrong shape");
  }
  GreensSeries out;
  out.momentum = k;
  out.kind = pair_series[0][0].kind;
  out.times = pair_series[0][0].times;
  out.values.assign(out.times.size(), cplx{0, 0});
  for (int p = 0; p < n_sites; ++p) {
    if (static_cast<int>(pair_series[p].size()) != n_sites) {
      throw std::invalid_argument("pair series matrix has the wrong shape");
    }
    for (int q = 0; q < n_sites; ++q) {
      const GreensSeries& series = pair_series[p][q];
      check_grids(series, out);
      const cplx w = momentum_weight(k, p, q, n_sites);
      for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] += w * series.values[i];
      }
    }
  }
  return out;
}

std::vector<double> spectral_function(const std::vector<cplx>& greens_omega) {
  std::vector<double> out;
  out.reserve(greens_omega.size());
  for (const cplx& g : greens_omega) {
    out.push_back(-g.imag() / std::numbers::pi);
  }
  return out;
}

}  // namespace qgf
