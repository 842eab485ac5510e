#include "renyi/optimize.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace renyi {

namespace {

constexpr double neg = -std::numeric_limits<double>::infinity();

double safe_eval(const std::function<double(double)>& f, double x) {
    double v = f(x);
    return std::isnan(v) ? neg : v;
}

// Golden-section ascent on [a, b]; assumes a single interior maximum there.
double golden_max(const std::function<double(double)>& f, double a, double b, double tol,
                  double& best_x) {
    constexpr double phi = 0.6180339887498949;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = safe_eval(f, x1);
    double f2 = safe_eval(f, x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = safe_eval(f, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = safe_eval(f, x1);
        }
    }
    best_x = 0.5 * (a + b);
    return safe_eval(f, best_x);
}

} // namespace

opt_result maximize_on_interval(const std::function<double(double)>& f, double lo, double hi,
                                int points, double tol) {
    if (points < 3) points = 3;
    std::vector<double> xs(points), vs(points);
    for (int i = 0; i < points; ++i) {
        xs[i] = lo + (hi - lo) * i / (points - 1);
        vs[i] = safe_eval(f, xs[i]);
    }

    opt_result best{xs[0], vs[0]};
    for (int i = 1; i < points; ++i)
        if (vs[i] > best.value) best = {xs[i], vs[i]};

    for (int i = 0; i < points; ++i) {
        bool left_ok = i == 0 || vs[i] >= vs[i - 1];
        bool right_ok = i == points - 1 || vs[i] >= vs[i + 1];
        if (!(left_ok && right_ok) || vs[i] == neg) continue;
        double a = xs[i == 0 ? 0 : i - 1];
        double b = xs[i == points - 1 ? points - 1 : i + 1];
        double x = 0.0;
        double v = golden_max(f, a, b, tol, x);
        if (v > best.value) best = {x, v};
    }
    return best;
}

opt_result maximize_on_rect(const std::function<double(double, double)>& f, double lo1, double hi1,
                            double lo2, double hi2, int n1, int n2, int rounds, double* arg2) {
    double bx = lo1, by = lo2, bv = neg;
    for (int i = 0; i < n1; ++i) {
        double x = lo1 + (hi1 - lo1) * i / (n1 - 1);
        for (int j = 0; j < n2; ++j) {
            double y = lo2 + (hi2 - lo2) * j / (n2 - 1);
            double v = f(x, y);
            if (std::isnan(v)) continue;
            if (v > bv) {
                bv = v;
                bx = x;
                by = y;
            }
        }
    }
    double span1 = (hi1 - lo1) / (n1 - 1);
    double span2 = (hi2 - lo2) / (n2 - 1);
    for (int r = 0; r < rounds; ++r) {
        double a = std::max(lo1, bx - span1), b = std::min(hi1, bx + span1);
        auto fx = [&](double x) { return f(x, by); };
        double x = bx;
        double v = golden_max(fx, a, b, 1e-10, x);
        if (v > bv) {
            bv = v;
            bx = x;
        }
        double c = std::max(lo2, by - span2), d = std::min(hi2, by + span2);
        auto fy = [&](double y) { return f(bx, y); };
        double y = by;
        v = golden_max(fy, c, d, 1e-10, y);
        if (v > bv) {
            bv = v;
            by = y;
        }
    }
    if (arg2) *arg2 = by;
    return opt_result{bx, bv};
}

} // namespace renyi
