#include "qgf/hubbard.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgf {

QubitLayout::QubitLayout(int n_sites) : n_sites_(n_sites) {
  if (n_sites < 1 || n_sites > 32) {
    throw std::invalid_argument("site count out of range");
  }
}

int QubitLayout::qubit(int site, Spin spin) const {
  if (site < 0 || site >= n_sites_) throw std::out_of_range("site index");
  return 2 * site + static_cast<int>(spin);
}

std::uint64_t QubitLayout::spin_mask(Spin spin) const {
  std::uint64_t mask = 0;
  for (int s = 0; s < n_sites_; ++s) mask |= std::uint64_t{1} << qubit(s, spin);
  return mask;
}

namespace {

PauliSum jw_ladder(int site, Spin spin, const QubitLayout& layout, double y_sign) {
  const int n = layout.n_qubits();
  const int target = layout.qubit(site, spin);
  PauliWord x_word(n), y_word(n);
  for (int q = 0; q < target; ++q) {
    x_word.set(q, PauliOp::Z);
    y_word.set(q, PauliOp::Z);
  }
  x_word.set(target, PauliOp::X);
  y_word.set(target, PauliOp::Y);
  PauliSum out(n);
  out.add(0.5, x_word);
  out.add(cplx{0, 0.5 * y_sign}, y_word);
  return out.simplified();
}

}  // namespace

PauliSum jw_creation(int site, Spin spin, const QubitLayout& layout) {
  return jw_ladder(site, spin, layout, -1.0);
}

PauliSum jw_annihilation(int site, Spin spin, const QubitLayout& layout) {
  return jw_ladder(site, spin, layout, 1.0);
}

PauliSum jw_number(int site, Spin spin, const QubitLayout& layout) {
  const int n = layout.n_qubits();
  PauliSum out(n);
  out.add(0.5, PauliWord(n));
  out.add(-0.5, PauliWord::single(n, layout.qubit(site, spin), PauliOp::Z));
  return out;
}

PauliSum total_number(const QubitLayout& layout) {
  PauliSum out(layout.n_qubits());
  for (int s = 0; s < layout.n_sites(); ++s) {
    out += jw_number(s, Spin::Up, layout);
    out += jw_number(s, Spin::Down, layout);
  }
  return out.simplified();
}

PauliSum total_sz(const QubitLayout& layout) {
  PauliSum out(layout.n_qubits());
  for (int s = 0; s < layout.n_sites(); ++s) {
    out += 0.5 * jw_number(s, Spin::Up, layout);
    out += cplx{-0.5} * jw_number(s, Spin::Down, layout);
  }
  return out.simplified();
}

PauliSum build_hamiltonian(const HubbardSpec& spec, const QubitLayout& layout) {
  if (spec.n_sites < 2) throw std::invalid_argument("need at least two sites");
  if (layout.n_sites() != spec.n_sites) {
    throw std::invalid_argument("layout/spec site counts differ");
  }
  const int n = layout.n_qubits();
  PauliSum h(n);

  // Hopping: adjacent sites within each spin species. For neighbouring sites
  // the JW string reduces to a single Z on the qubit in between, giving
  // -t/2 (X Z X + Y Z Y) per bond and spin.
  for (int s = 0; s + 1 < spec.n_sites; ++s) {
    for (Spin spin : {Spin::Up, Spin::Down}) {
      const int a = layout.qubit(s, spin);
      const int b = layout.qubit(s + 1, spin);
      PauliWord xx(n), yy(n);
      for (int q = a + 1; q < b; ++q) {
        xx.set(q, PauliOp::Z);
        yy.set(q, PauliOp::Z);
      }
      xx.set(a, PauliOp::X).set(b, PauliOp::X);
      yy.set(a, PauliOp::Y).set(b, PauliOp::Y);
      h.add(-spec.t / 2.0, xx);
      h.add(-spec.t / 2.0, yy);
    }
  }

  // On-site interaction and chemical potential via n = (I - Z)/2.
  for (int s = 0; s < spec.n_sites; ++s) {
    const int up = layout.qubit(s, Spin::Up);
    const int dn = layout.qubit(s, Spin::Down);
    const PauliWord id(n);
    const PauliWord zu = PauliWord::single(n, up, PauliOp::Z);
    const PauliWord zd = PauliWord::single(n, dn, PauliOp::Z);
    PauliWord zz(n);
    zz.set(up, PauliOp::Z).set(dn, PauliOp::Z);

    h.add(spec.u / 4.0, id);
    h.add(-spec.u / 4.0, zu);
    h.add(-spec.u / 4.0, zd);
    h.add(spec.u / 4.0, zz);

    h.add(-spec.mu, id);
    h.add(spec.mu / 2.0, zu);
    h.add(spec.mu / 2.0, zd);
  }

  return h.simplified();
}

std::vector<double> momentum_grid(int n_sites) {
  std::vector<double> ks(static_cast<std::size_t>(n_sites));
  for (int m = 0; m < n_sites; ++m) {
    ks[m] = 2.0 * std::numbers::pi * m / n_sites;
  }
  return ks;
}

cplx momentum_weight(double k, int p, int q, int n_sites) {
  const double arg = -k * (p - q);
  return cplx{std::cos(arg), std::sin(arg)} / static_cast<double>(n_sites);
}

Statevector segregated_product_state(const QubitLayout& layout) {
  const int n_sites = layout.n_sites();
  if (n_sites % 2 != 0) {
    throw std::invalid_argument("segregated product state needs an even chain");
  }
  std::uint64_t bits = 0;
  for (int s = 0; s < n_sites / 2; ++s) {
    bits |= std::uint64_t{1} << layout.qubit(s, Spin::Up);
  }
  for (int s = n_sites / 2; s < n_sites; ++s) {
    bits |= std::uint64_t{1} << layout.qubit(s, Spin::Down);
  }
  return Statevector::basis_state(layout.n_qubits(), bits);
}

}  // namespace qgf
