#include "qgf/mitigation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qgf {

PostselectResult number_postselect(const Histogram& hist, int n_electrons) {
  PostselectResult result;
  result.histogram.n_system_bits = hist.n_system_bits;
  result.histogram.counts.assign(hist.counts.size(), 0);

  const std::uint64_t system_mask =
      (std::uint64_t{1} << hist.n_system_bits) - 1;
  std::uint64_t kept = 0;
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    if (std::popcount(b & system_mask) == n_electrons) {
      result.histogram.counts[b] = hist.counts[b];
      kept += hist.counts[b];
    }
  }
  result.histogram.shots = kept;
  result.empty = kept == 0;
  result.retained_fraction =
      hist.shots == 0 ? 0.0
                      : static_cast<double>(kept) / static_cast<double>(hist.shots);
  return result;
}

std::vector<double> resolution_enhance(const std::vector<double>& frequencies,
                                       double k2, ReplacePolicy policy) {
  if (k2 < 0) throw std::invalid_argument("enhancement weight must be nonnegative");
  const std::size_t n = frequencies.size();
  std::size_t populated = 0;
  double total = 0;
  for (double y : frequencies) {
    if (y > 0) ++populated;
    total += y;
  }
  // Too little structure for a second difference: pass through unchanged.
  if (populated < 3 || k2 == 0) return frequencies;

  auto at = [&](std::ptrdiff_t j) {
    // Replicate-edge padding instead of fabricating off-range bitstrings.
    if (j < 0) j = 0;
    if (j >= static_cast<std::ptrdiff_t>(n)) j = static_cast<std::ptrdiff_t>(n) - 1;
    return frequencies[static_cast<std::size_t>(j)];
  };

  std::vector<double> reformed(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto sj = static_cast<std::ptrdiff_t>(j);
    const double second = at(sj + 1) - 2.0 * at(sj) + at(sj - 1);
    reformed[j] = std::max(0.0, frequencies[j] - k2 * second);
  }

  if (policy == ReplacePolicy::PeaksOnly) {
    // Keep original frequencies except at local maxima of the reformed data.
    std::vector<double> mixed = frequencies;
    for (std::size_t j = 0; j < n; ++j) {
      const auto sj = static_cast<std::ptrdiff_t>(j);
      const double left = sj > 0 ? reformed[j - 1] : reformed[j];
      const double right = j + 1 < n ? reformed[j + 1] : reformed[j];
      if (reformed[j] >= left && reformed[j] >= right && reformed[j] > 0) {
        mixed[j] = reformed[j];
      }
    }
    reformed = std::move(mixed);
  }

  double reformed_total = 0;
  for (double r : reformed) reformed_total += r;
  if (reformed_total <= 0) return frequencies;
  const double scale = total / reformed_total;
  for (double& r : reformed) r *= scale;
  return reformed;
}

SweepResult k2_sweep(const std::vector<double>& frequencies,
                     const HistogramEstimator& estimator, double epsilon,
                     const std::vector<double>& grid, ReplacePolicy policy) {
  if (grid.empty()) throw std::invalid_argument("empty enhancement grid");
  SweepResult result;
  double running = 0;
  double prev_avg = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double p0 = estimator(resolution_enhance(frequencies, grid[j], policy));
    result.p0_by_k2.push_back(p0);
    running += p0;
    const double avg = running / static_cast<double>(j + 1);
    result.k2 = grid[j];
    result.p0 = avg;
    result.iterations = static_cast<int>(j + 1);
    if (j > 0 && std::abs(avg - prev_avg) < epsilon) break;
    prev_avg = avg;
  }
  return result;
}

namespace {

double fit_center(const std::vector<double>& series, std::size_t center, int half,
                  int polyorder) {
  const auto lo = static_cast<std::ptrdiff_t>(center) - half;
  const int count = 2 * half + 1;
  const int order = std::min(polyorder, count - 1);
  Eigen::MatrixXd vand(count, order + 1);
  Eigen::VectorXd rhs(count);
  for (int r = 0; r < count; ++r) {
    const double x = static_cast<double>(r - half);
    double pw = 1;
    for (int c = 0; c <= order; ++c) {
      vand(r, c) = pw;
      pw *= x;
    }
    rhs[r] = series[static_cast<std::size_t>(lo + r)];
  }
  const Eigen::VectorXd coeffs = vand.colPivHouseholderQr().solve(rhs);
  return coeffs[0];  // polynomial value at the window center
}

}  // namespace

std::vector<double> savitzky_golay(const std::vector<double>& series, int window,
                                   int polyorder) {
  if (window % 2 == 0 || window <= polyorder || polyorder < 0) {
    throw std::invalid_argument("smoothing window must be odd and exceed the order");
  }
  const std::size_t n = series.size();
  std::vector<double> out(n);
  const int half_max = window / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const int room = static_cast<int>(std::min<std::size_t>(i, n - 1 - i));
    const int half = std::min(half_max, room);
    if (half == 0) {
      out[i] = series[i];
      continue;
    }
    out[i] = fit_center(series, i, half, polyorder);
  }
  return out;
}

std::vector<cplx> savitzky_golay(const std::vector<cplx>& series, int window,
                                 int polyorder) {
  std::vector<double> re(series.size()), im(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    re[i] = series[i].real();
    im[i] = series[i].imag();
  }
  re = savitzky_golay(re, window, polyorder);
  im = savitzky_golay(im, window, polyorder);
  std::vector<cplx> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) out[i] = {re[i], im[i]};
  return out;
}

}  // namespace qgf
