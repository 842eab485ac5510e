#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace renyi {

inline constexpr double inf = std::numeric_limits<double>::infinity();

// log(sum(exp(x))) with the usual max shift; empty input gives -inf.
inline double log_sum_exp(const std::vector<double>& xs) {
    double m = -inf;
    for (double x : xs) m = std::max(m, x);
    if (m == -inf) return -inf;
    if (m == inf) return inf;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

// Streaming variant: accumulate terms without materializing a vector.
class log_sum_exp_acc {
public:
    void add(double x) { xs_.push_back(x); }
    double value() const { return log_sum_exp(xs_); }

private:
    std::vector<double> xs_;
};

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

} // namespace renyi
