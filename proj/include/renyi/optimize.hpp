#pragma once

#include <functional>

namespace renyi {

struct opt_result {
    double arg = 0.0;
    double value = 0.0;
};

// Maximize f on [lo, hi]: a uniform scan of `points` samples followed by
// golden-section refinement around every scan-local maximum. Non-finite
// samples are treated as -inf. Suited to the piecewise-smooth one-dimensional
// objectives here, which can carry several local maxima.
opt_result maximize_on_interval(const std::function<double(double)>& f, double lo, double hi,
                                int points = 512, double tol = 1e-10);

// Maximize f on [lo1,hi1]x[lo2,hi2]: a coarse grid scan followed by rounds of
// coordinate-wise golden refinement from the best cell.
opt_result maximize_on_rect(const std::function<double(double, double)>& f, double lo1, double hi1,
                            double lo2, double hi2, int n1 = 256, int n2 = 256, int rounds = 3,
                            double* arg2 = nullptr);

} // namespace renyi
