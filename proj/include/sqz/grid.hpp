#pragma once

#include <cmath>

namespace sqz {

/// i-th of `steps` uniformly spaced points on [lo, hi]; endpoints are exact.
inline double grid_point(double lo, double hi, int steps, int i) {
    if (i == 0) return lo;
    if (i == steps - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

/// Log-spaced counterpart of grid_point; requires 0 < lo < hi.
inline double log_grid_point(double lo, double hi, int steps, int i) {
    if (i == 0) return lo;
    if (i == steps - 1) return hi;
    const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
    return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * t);
}

}  // namespace sqz
