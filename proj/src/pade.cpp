#include "qgf/pade.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace qgf {

std::vector<cplx> apply_damping(const std::vector<cplx>& series, double dt, double zeta) {
  if (zeta <= 0) throw std::invalid_argument("damping must be positive");
  std::vector<cplx> out(series.size());
  for (std::size_t k = 0; k < series.size(); ++k) {
    out[k] = series[k] * std::exp(-zeta * dt * static_cast<double>(k));
  }
  return out;
}

PadeSpectrum pade_fit(const std::vector<cplx>& damped_series, double dt, double zeta,
                      int order) {
  const int len = static_cast<int>(damped_series.size());
  if (order <= 0) order = (len - 1) / 2;
  if (len < 2 * order + 1) {
    throw std::invalid_argument("series too short for the requested Pade order");
  }
  const int m = order;

  // Denominator: sum_{j=1..M} b_j c_{k-j} = -c_k for k = M+1 .. 2M.
  Eigen::MatrixXcd toeplitz(m, m);
  Eigen::VectorXcd rhs(m);
  for (int r = 0; r < m; ++r) {
    const int k = m + 1 + r;
    for (int j = 1; j <= m; ++j) {
      toeplitz(r, j - 1) = damped_series[static_cast<std::size_t>(k - j)];
    }
    rhs[r] = -damped_series[static_cast<std::size_t>(k)];
  }

  // These systems are often numerically rank-deficient; a rank-revealing
  // least-squares solve keeps the fit stable without hand-tuned damping.
  Eigen::VectorXcd b_tail = toeplitz.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
                                .solve(rhs);
  if (!b_tail.allFinite()) {
    throw std::runtime_error("Pade denominator solve failed");
  }

  PadeSpectrum spec;
  spec.dt = dt;
  spec.zeta = zeta;
  spec.source_len = len;
  spec.b.resize(static_cast<std::size_t>(m) + 1);
  spec.b[0] = 1.0;
  for (int j = 1; j <= m; ++j) spec.b[static_cast<std::size_t>(j)] = b_tail[j - 1];

  // Numerator by convolution: a_k = sum_{j=0..k} b_j c_{k-j}, k = 0..M.
  spec.a.resize(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) {
    cplx acc = 0;
    for (int j = 0; j <= k; ++j) {
      acc += spec.b[static_cast<std::size_t>(j)] *
             damped_series[static_cast<std::size_t>(k - j)];
    }
    spec.a[static_cast<std::size_t>(k)] = acc;
  }
  return spec;
}

namespace {

cplx horner(const std::vector<cplx>& coeffs, cplx z) {
  cplx acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace

std::vector<cplx> pade_eval(const PadeSpectrum& spec, const std::vector<double>& omega,
                            std::vector<bool>* pole_flags) {
  if (spec.b.empty()) throw std::invalid_argument("Pade fit not initialized");
  const cplx g0 = spec.a[0];  // a_0 = b_0 c_0 = c_0
  std::vector<cplx> out;
  out.reserve(omega.size());
  if (pole_flags) pole_flags->assign(omega.size(), false);
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const double arg = omega[i] * spec.dt;
    const cplx z{std::cos(arg), std::sin(arg)};
    const cplx denom = horner(spec.b, z);
    if (std::abs(denom) < 1e-12) {
      if (pole_flags) (*pole_flags)[i] = true;
      out.push_back(cplx{0, 0});
      continue;
    }
    out.push_back(spec.dt * (horner(spec.a, z) / denom - 0.5 * g0));
  }
  return out;
}

std::vector<cplx> damped_dft(const std::vector<cplx>& series, double dt, double zeta,
                             const std::vector<double>& omega) {
  if (zeta <= 0) throw std::invalid_argument("damping must be positive");
  const std::size_t len = series.size();
  if (len < 2) throw std::invalid_argument("series too short for a transform");
  const std::vector<cplx> damped = apply_damping(series, dt, zeta);

  std::vector<cplx> out;
  out.reserve(omega.size());
  for (const double w : omega) {
    cplx acc = 0;
    for (std::size_t k = 0; k < len; ++k) {
      const double arg = w * dt * static_cast<double>(k);
      cplx term = damped[k] * cplx{std::cos(arg), std::sin(arg)};
      if (k == 0 || k + 1 == len) term *= 0.5;
      acc += term;
    }
    out.push_back(dt * acc);
  }
  return out;
}

std::vector<double> linspace_step(double lo, double hi, double step) {
  if (step <= 0 || hi < lo) throw std::invalid_argument("bad grid parameters");
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5));
  out.reserve(count + 1);
  for (std::size_t i = 0; i <= count; ++i) {
    out.push_back(lo + step * static_cast<double>(i));
  }
  return out;
}

}  // namespace qgf
