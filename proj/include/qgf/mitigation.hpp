#pragma once

#include <functional>
#include <vector>

#include "qgf/shots.hpp"

namespace qgf {

/// Keeps only bitstrings whose system bits carry exactly `n_electrons` ones;
/// the ancilla bit is ignored by the filter. An empty result is flagged so
/// downstream estimators can reject it.
struct PostselectResult {
  Histogram histogram;
  bool empty = false;
  double retained_fraction = 0;
};

PostselectResult number_postselect(const Histogram& hist, int n_electrons);

enum class ReplacePolicy {
  AllBins,   // every bin replaced by the clipped reformed frequency
  PeaksOnly  // only local maxima of the reformed data are replaced
};

/// Peak sharpening r_j = y_j - k2 y_j'' over the decimal-ordered frequencies,
/// with replicate-edge second differences, negative values clipped to zero
/// and the result renormalized to the input total.
std::vector<double> resolution_enhance(const std::vector<double>& frequencies,
                                       double k2,
                                       ReplacePolicy policy = ReplacePolicy::AllBins);

using HistogramEstimator = std::function<double(const std::vector<double>&)>;

struct SweepResult {
  double k2 = 0;          // last grid value folded into the average
  double p0 = 0;          // converged running average
  int iterations = 0;     // grid points consumed
  std::vector<double> p0_by_k2;
};

/// Iterates the enhancement weight over `grid`, tracking the running average
/// of the estimator and stopping once consecutive averages differ by less
/// than epsilon; returns the final running average as the mitigated value.
SweepResult k2_sweep(const std::vector<double>& frequencies,
                     const HistogramEstimator& estimator, double epsilon,
                     const std::vector<double>& grid,
                     ReplacePolicy policy = ReplacePolicy::AllBins);

/// Savitzky-Golay least-squares smoothing with shrinking symmetric windows at
/// the boundaries. Window must be odd and larger than the polynomial order.
std::vector<double> savitzky_golay(const std::vector<double>& series, int window,
                                   int polyorder);
std::vector<cplx> savitzky_golay(const std::vector<cplx>& series, int window,
                                 int polyorder);

}  // namespace qgf
