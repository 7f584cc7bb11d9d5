#pragma once

#include <cstdint>
#include <vector>

#include "qgf/pauli.hpp"
#include "qgf/statevector.hpp"

namespace qgf {

enum class Spin : int { Up = 0, Down = 1 };

/// Open-boundary single-band Hubbard chain parameters (energy unit = hopping).
struct HubbardSpec {
  int n_sites = 2;
  double t = 1.0;
  double u = 4.0;
  double mu = 2.0;

  static HubbardSpec half_filled(int n_sites, double u, double t = 1.0) {
    return {n_sites, t, u, u / 2.0};
  }
  bool particle_hole_symmetric() const { return mu == u / 2.0; }
};

/// Site-major qubit assignment: qubit(site, spin) = 2*site + spin, so each
/// site owns an adjacent (up, down) qubit pair and the Jordan-Wigner string
/// of a hop crosses exactly one qubit.
class QubitLayout {
 public:
  explicit QubitLayout(int n_sites);

  int n_sites() const { return n_sites_; }
  int n_qubits() const { return 2 * n_sites_; }
  int qubit(int site, Spin spin) const;
  int site_of(int qubit) const { return qubit / 2; }
  Spin spin_of(int qubit) const { return qubit % 2 == 0 ? Spin::Up : Spin::Down; }

  std::uint64_t spin_mask(Spin spin) const;

 private:
  int n_sites_;
};

/// Jordan-Wigner image of the creation operator c^dag_{site,spin}: a Z string
/// below the target qubit followed by (X - iY)/2.
PauliSum jw_creation(int site, Spin spin, const QubitLayout& layout);
/// Elementwise conjugate of jw_creation: Z string followed by (X + iY)/2.
PauliSum jw_annihilation(int site, Spin spin, const QubitLayout& layout);

/// Occupation number operator n_{site,spin} = (I - Z)/2.
PauliSum jw_number(int site, Spin spin, const QubitLayout& layout);
/// Total electron number operator.
PauliSum total_number(const QubitLayout& layout);
/// Total S_z operator, (N_up - N_down)/2.
PauliSum total_sz(const QubitLayout& layout);

/// Qubit Hamiltonian of the open Hubbard chain,
///   H = -t sum (c^dag c + h.c.) + U sum n_up n_down - mu sum n,
/// simplified with the identity term retained.
PauliSum build_hamiltonian(const HubbardSpec& spec, const QubitLayout& layout);

/// Momentum values 2*pi*m/N for m = 0..N-1.
std::vector<double> momentum_grid(int n_sites);

/// Plane-wave weight (1/N) exp(-i k (p - q)) combining real-space pair
/// series into the momentum-space series.
cplx momentum_weight(double k, int p, int q, int n_sites);

/// Half-filled product state with up spins on the left half of the chain and
/// down spins on the right half (N must be even).
Statevector segregated_product_state(const QubitLayout& layout);

}  // namespace qgf
