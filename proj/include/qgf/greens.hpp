#pragma once

#include <string>
#include <vector>

#include "qgf/avqds.hpp"
#include "qgf/hubbard.hpp"
#include "qgf/statevector.hpp"

namespace qgf {

enum class GreensKind { Greater, Lesser, Retarded };

/// Uniformly sampled complex correlator series, tagged by kind and by either
/// an orbital pair (p, q) or a momentum k.
struct GreensSeries {
  std::vector<double> times;
  std::vector<cplx> values;
  GreensKind kind = GreensKind::Greater;
  int p = -1, q = -1;
  double momentum = -1;  // < 0 when the series is real-space
  Spin spin = Spin::Up;
};

/// Overlap series Gtilde(t) = <psi0| c_p U(theta(t)) c^dag_q |psi0>, replayed
/// from a stored trajectory with the branch norms reattached.
std::vector<cplx> gtilde_series(const Trajectory& traj, const Statevector& psi0,
                                const BranchSet& branch_p, const BranchSet& branch_q);

/// Same quantity evaluated through the branch double sum
/// sum_{ab} eta^(p)_a eta^(q)_b <psi0|P_a U P_b|psi0>; cross-validation path.
std::vector<cplx> gtilde_series_branch_sum(const Trajectory& traj,
                                           const Statevector& psi0,
                                           const BranchSet& branch_p,
                                           const BranchSet& branch_q);

/// G>(t) = -i exp(+i e_phase t) Gtilde(t).
GreensSeries g_greater(const std::vector<double>& times, const std::vector<cplx>& gtilde,
                       double e_phase, int p, int q);

enum class LesserMode { Symmetry, Direct };

/// Particle-hole shortcut G<(t) = conj(G>(t)); only valid at mu = U/2.
GreensSeries g_lesser_symmetry(const GreensSeries& greater, bool ph_symmetric);

/// G<(t) = +i exp(-i e_phase t) <c_q psi0| Psi_hole(t)> with the hole state
/// evolved under -H; `hole_overlap` carries that overlap series with branch
/// norms already attached.
GreensSeries g_lesser_direct(const std::vector<double>& times,
                             const std::vector<cplx>& hole_overlap, double e_phase,
                             int p, int q);

/// G^R(t) = theta(t) (G>(t) - G<(t)); identically zero for t < 0, so the
/// sampled t >= 0 grid carries the whole function.
GreensSeries retarded(const GreensSeries& greater, const GreensSeries& lesser);

/// Momentum transform: G_k = (1/N) sum_{p,q} exp(-i k (p-q)) G_pq.
/// `pair_series[p][q]` must cover all ordered pairs on the same grid.
GreensSeries momentum_combine(const std::vector<std::vector<GreensSeries>>& pair_series,
                              double k, int n_sites);

/// Spectral function A(w) = -Im G^R(w) / pi.
std::vector<double> spectral_function(const std::vector<cplx>& greens_omega);

}  // namespace qgf
