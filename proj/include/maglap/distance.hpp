#pragma once

#include "maglap/kpm.hpp"

namespace maglap {

/// d-Wasserstein distance between two discrete measures on the line via the
/// quantile formula: merge the cumulative weights, integrate the quantile
/// difference to the d-th power, take the d-th root. Equals the optimal
/// transport LP value in one dimension.
double wasserstein_1d(const kpm::SpectralDensity& a, const kpm::SpectralDensity& b,
                      double order = 1.0);

/// Verification oracle: solves the transport LP directly with the
/// transportation simplex (Bland's rule). Supports up to 200 points per side.
double wasserstein_lp_oracle(const kpm::SpectralDensity& a, const kpm::SpectralDensity& b,
                             double order = 1.0);

}  // namespace maglap
