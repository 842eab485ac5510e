#include "renyi/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "renyi/errors.hpp"
#include "renyi/optimize.hpp"
#include "renyi/util.hpp"

namespace renyi {

namespace {

constexpr double value_clamp = 1e6;    // sups beyond this report as +inf
constexpr double ray_top = 1.0 - 1e-6; // compactified scan bound for t in [t_lo, inf)

double ent(const pmf& d, double beta) { return renyi_entropy(d, order(beta)); }

void check_alpha(order alpha) {
    if (alpha.tag() == order::kind::neg_inf ||
        (alpha.tag() == order::kind::finite && alpha.real() < 0.0))
        throw input_error("asymptotics: order must be nonnegative");
}

void check_threshold_rate(double r, const char* what) {
    if (!std::isfinite(r) || r < 0.0)
        throw input_error(std::string("asymptotics: ") + what + " must be finite and nonnegative");
}

bool alpha_in_01(order alpha) {
    return alpha.tag() == order::kind::finite && alpha.real() > 0.0 && alpha.real() < 1.0;
}

bool alpha_ge_1(order alpha) {
    return alpha.tag() == order::kind::one || alpha.tag() == order::kind::pos_inf ||
           (alpha.tag() == order::kind::finite && alpha.real() > 1.0);
}

// (alpha - 1)/alpha with exact sentinels; callers ensure alpha in (0, inf].
double tilt_coeff(order alpha) {
    switch (alpha.tag()) {
    case order::kind::one:
        return 0.0;
    case order::kind::pos_inf:
        return 1.0;
    default:
        return (alpha.real() - 1.0) / alpha.real();
    }
}

// Order 1 - alpha with the infinite sentinel kept exact.
order flip_order(order alpha) {
    return alpha.tag() == order::kind::pos_inf ? order::neg_inf() : order(1.0 - alpha.real());
}

double finish(double v) {
    if (v > value_clamp) return inf;
    return positive_part(v);
}

// Linear behavior of an objective, f(t) -> slope * t + level, as t -> inf.
struct ray_tail {
    double slope = 0.0;
    double level = 0.0;
};

// sup of f over [t_lo, inf): compactified scan plus the two closures, the
// supplied left endpoint value and the analytic t -> inf limit. The scan is
// kept off the exact endpoint so sentinel orders never mix with finite ones.
double sup_on_ray(const std::function<double(double)>& f, double t_lo, double left_value,
                  ray_tail tail) {
    if (tail.slope > 0.0) return inf;
    double best = left_value;
    if (tail.slope == 0.0) best = std::max(best, tail.level);
    double s_lo = t_lo / (1.0 + t_lo) + 1e-9;
    if (s_lo >= ray_top) return best;
    auto g = [&](double s) { return f(s / (1.0 - s)); };
    return std::max(best, maximize_on_interval(g, s_lo, ray_top).value);
}

// inf of r over [t_lo, inf) with explicit endpoint candidates.
double inf_on_ray(const std::function<double(double)>& r, double t_lo, double left_value,
                  double right_value) {
    double best = std::min(left_value, right_value);
    double s_lo = t_lo / (1.0 + t_lo) + 1e-9;
    if (s_lo >= ray_top) return best;
    auto g = [&](double s) { return -r(s / (1.0 - s)); };
    return std::min(best, -maximize_on_interval(g, s_lo, ray_top).value);
}

// sup over t in [0,1] of t H_{1/(1-t)}(q) - (t/R) H_{beta(t)}(p), the shared
// one-parameter family for the pq divergence at every order and for the first
// branch of the max form. beta(t) = 1/(1 - c t) except at order 0, where the
// source term pins to the support entropy.
double sup_pq_form(const pmf& p, const pmf& q, double rate, order alpha) {
    std::function<double(double)> f;
    if (alpha.tag() == order::kind::zero) {
        double h0p = ent(p, 0.0);
        f = [&q, rate, h0p](double t) {
            return t * renyi_entropy(q, order(1.0 / (1.0 - t))) - (t / rate) * h0p;
        };
    } else {
        double c = tilt_coeff(alpha);
        f = [&p, &q, rate, c](double t) {
            return t * renyi_entropy(q, order(1.0 / (1.0 - t))) -
                   (t / rate) * renyi_entropy(p, order(1.0 / (1.0 - c * t)));
        };
    }
    return maximize_on_interval(f, 0.0, 1.0).value;
}

// sup over t in (0, inf) of t H_{1/(1+c t)}(q) - (t/R) H_{1/(1+t)}(p), the qp
// family for orders >= 1 (c in [0,1]).
double sup_qp_form(const pmf& p, const pmf& q, double rate, double c) {
    double h0p = ent(p, 0.0);
    double h0q = ent(q, 0.0);
    ray_tail tail;
    tail.slope = (c > 0.0 ? h0q : shannon_entropy(q)) - h0p / rate;
    tail.level = (c > 0.0 ? (h0q - mode_entropy(q)) / c : 0.0) + (mode_entropy(p) - h0p) / rate;
    auto f = [&p, &q, rate, c](double t) {
        return t * renyi_entropy(q, order(1.0 / (1.0 + c * t))) -
               (t / rate) * renyi_entropy(p, order(1.0 / (1.0 + t)));
    };
    return sup_on_ray(f, 0.0, 0.0, tail);
}

// sup over t in [1/c, inf) of the pq family, where both entropy orders run
// negative; the second branch of the max form for orders above 1.
double sup_pq_ray(const pmf& p, const pmf& q, double rate, order alpha) {
    double c = tilt_coeff(alpha); // in (0,1]
    double t0 = 1.0 / c;
    double left = t0 * renyi_entropy(q, flip_order(alpha)) -
                  (t0 / rate) * renyi_entropy(p, order::neg_inf());
    double h0p = ent(p, 0.0);
    double h0q = ent(q, 0.0);
    ray_tail tail;
    tail.slope = h0q - h0p / rate;
    tail.level = (mode_entropy(q) - h0q) - (mode_entropy(p) - h0p) / (c * rate);
    auto f = [&p, &q, rate, c](double t) {
        return t * renyi_entropy(q, order(1.0 / (1.0 - t))) -
               (t / rate) * renyi_entropy(p, order(1.0 / (1.0 - c * t)));
    };
    return sup_on_ray(f, t0, left, tail);
}

// sup over t in [0,1] of t (H_{1/(1-t)}(q) - rate_tilde), the uniform-input
// specialization of the pq family.
double sup_coin_form(const pmf& q, double rate_tilde) {
    auto f = [&q, rate_tilde](double t) {
        return t * (renyi_entropy(q, order(1.0 / (1.0 - t))) - rate_tilde);
    };
    return maximize_on_interval(f, 0.0, 1.0).value;
}

// sup over t in [0, inf) of t (level_rate - H_{1/(1+t)}(d)).
double sup_uniform_target_form(const pmf& d, double level_rate) {
    double h0 = ent(d, 0.0);
    ray_tail tail;
    tail.slope = level_rate - h0;
    tail.level = mode_entropy(d) - h0;
    auto f = [&d, level_rate](double t) {
        return t * (level_rate - renyi_entropy(d, order(1.0 / (1.0 + t))));
    };
    return sup_on_ray(f, 0.0, 0.0, tail);
}

} // namespace

direction parse_direction(const std::string& token) {
    if (token == "pq") return direction::pq;
    if (token == "qp") return direction::qp;
    if (token == "max") return direction::max_dir;
    throw input_error("direction: expected pq, qp, or max, got '" + token + "'");
}

double asymptotic_divergence(const rate_query& query, direction dir) {
    check_alpha(query.alpha);
    if (!std::isfinite(query.rate) || !(query.rate > 0.0))
        throw input_error("asymptotics: rate must be finite and positive");
    const pmf& p = query.p;
    const pmf& q = query.q;
    double rate = query.rate;
    order alpha = query.alpha;

    if (dir != direction::pq && alpha_ge_1(alpha)) {
        // A point target is simulated exactly by the constant code at any rate.
        if (q.support_size() == 1) return 0.0;
        double knife = ent(p, 0.0) / ent(q, 0.0);
        if (std::abs(rate - knife) <= 1e-9 * std::max(1.0, knife))
            throw input_error("asymptotics: at this rate the support-size budgets tie and the "
                              "limit depends on how n/k approaches the rate");
        if (rate > knife) return inf;
    }

    switch (dir) {
    case direction::pq:
        return finish(sup_pq_form(p, q, rate, alpha));
    case direction::qp: {
        if (alpha.tag() == order::kind::zero) return 0.0;
        if (alpha_in_01(alpha)) {
            double g = alpha.real() / (1.0 - alpha.real());
            auto f = [&p, &q, rate, g](double t) {
                return t * renyi_entropy(q, order(1.0 / (1.0 - t))) -
                       (t / rate) * renyi_entropy(p, order(1.0 / (1.0 + g * t)));
            };
            return finish(g * maximize_on_interval(f, 0.0, 1.0).value);
        }
        return finish(sup_qp_form(p, q, rate, tilt_coeff(alpha)));
    }
    case direction::max_dir: {
        if (alpha.tag() == order::kind::zero) return finish(sup_pq_form(p, q, rate, alpha));
        if (alpha_in_01(alpha)) {
            double g = alpha.real() / (1.0 - alpha.real());
            auto f2 = [&p, &q, rate, g](double t, double tp) {
                double a = (g - 1.0) * tp + 1.0;
                double b = (1.0 - g) * tp + g;
                return t * b * renyi_entropy(q, order(1.0 / (1.0 - t))) -
                       (t * b / rate) * renyi_entropy(p, order(a / (a + t * b)));
            };
            return finish(maximize_on_rect(f2, 0.0, 1.0, 0.0, 1.0).value);
        }
        double best = std::max(sup_pq_form(p, q, rate, alpha),
                               sup_qp_form(p, q, rate, tilt_coeff(alpha)));
        if (alpha.tag() != order::kind::one) best = std::max(best, sup_pq_ray(p, q, rate, alpha));
        return finish(best);
    }
    }
    throw input_error("asymptotics: unknown direction");
}

double conversion_rate(const pmf& p, const pmf& q, order alpha, direction dir) {
    check_alpha(alpha);
    double h1p = shannon_entropy(p);
    double h1q = shannon_entropy(q);
    double h0p = ent(p, 0.0);
    double h0q = ent(q, 0.0);
    switch (dir) {
    case direction::pq: {
        if (alpha.tag() == order::kind::zero) return h0p / h1q;
        if (alpha_in_01(alpha)) return h1p / h1q;
        double c = tilt_coeff(alpha);
        auto neg_ratio = [&p, &q, c](double t) {
            return -renyi_entropy(p, order(1.0 / (1.0 - c * t))) /
                   renyi_entropy(q, order(1.0 / (1.0 - t)));
        };
        return -maximize_on_interval(neg_ratio, 0.0, 1.0).value;
    }
    case direction::qp: {
        if (alpha.tag() == order::kind::zero) return inf;
        if (alpha_in_01(alpha)) return h1p / h1q;
        if (alpha.tag() == order::kind::one) return std::min(h1p / h1q, h0p / h0q);
        double c = tilt_coeff(alpha);
        auto ratio = [&p, &q, c](double t) {
            return renyi_entropy(p, order(1.0 / (1.0 + t))) /
                   renyi_entropy(q, order(1.0 / (1.0 + c * t)));
        };
        return inf_on_ray(ratio, 0.0, h1p / h1q, h0p / h0q);
    }
    case direction::max_dir: {
        if (alpha.tag() == order::kind::zero) return h0p / h1q;
        if (alpha_in_01(alpha)) return h1p / h1q;
        if (alpha.tag() == order::kind::one) return std::min(h1p / h1q, h0p / h0q);
        double c = tilt_coeff(alpha);
        auto neg_ratio1 = [&p, &q, c](double t) {
            return -renyi_entropy(p, order(1.0 / (1.0 - c * t))) /
                   renyi_entropy(q, order(1.0 / (1.0 - t)));
        };
        double m1 = -maximize_on_interval(neg_ratio1, 0.0, 1.0).value;
        double t0 = 1.0 / c;
        double left = renyi_entropy(p, order::neg_inf()) / renyi_entropy(q, flip_order(alpha));
        auto ratio2 = [&p, &q, c](double t) {
            return renyi_entropy(p, order(1.0 / (1.0 - c * t))) /
                   renyi_entropy(q, order(1.0 / (1.0 - t)));
        };
        double m2 = inf_on_ray(ratio2, t0, left, h0p / h0q);
        auto ratio3 = [&p, &q, c](double t) {
            return renyi_entropy(p, order(1.0 / (1.0 + t))) /
                   renyi_entropy(q, order(1.0 / (1.0 + c * t)));
        };
        double m3 = inf_on_ray(ratio3, 0.0, h1p / h1q, h0p / h0q);
        return std::min({m1, m2, m3});
    }
    }
    throw input_error("asymptotics: unknown direction");
}

double conversion_rate_unnormalized_lb(const pmf& p, const pmf& q, order alpha) {
    if (alpha.tag() != order::kind::finite || alpha.real() <= 1.0)
        throw input_error("unnormalized-rate bound: order must be finite and above 1");
    double a = alpha.real();
    auto neg_ratio = [&p, &q, a](double t) {
        double beta = (a - 1.0 + t) / ((a - 1.0) * (1.0 - t) + t);
        return -renyi_entropy(p, order(beta)) / renyi_entropy(q, order(1.0 / (1.0 - t)));
    };
    return -maximize_on_interval(neg_ratio, 0.0, 1.0).value;
}

double resolvability(const pmf& q, order alpha, direction dir) {
    check_alpha(alpha);
    switch (dir) {
    case direction::pq:
        return shannon_entropy(q);
    case direction::qp:
        if (alpha.tag() == order::kind::zero) return 0.0;
        if (alpha_in_01(alpha)) return shannon_entropy(q);
        return ent(q, 0.0);
    case direction::max_dir:
        if (alpha_ge_1(alpha)) return renyi_entropy(q, flip_order(alpha));
        return shannon_entropy(q);
    }
    throw input_error("asymptotics: unknown direction");
}

double resolvability_asymptotics(const pmf& q, double rate_tilde, order alpha, direction dir) {
    check_alpha(alpha);
    check_threshold_rate(rate_tilde, "coin rate");
    switch (dir) {
    case direction::pq:
        return finish(sup_coin_form(q, rate_tilde));
    case direction::qp: {
        if (alpha.tag() == order::kind::zero) return 0.0;
        if (alpha_in_01(alpha)) {
            double g = alpha.real() / (1.0 - alpha.real());
            return finish(g * sup_coin_form(q, rate_tilde));
        }
        return rate_tilde < ent(q, 0.0) ? inf : 0.0;
    }
    case direction::max_dir: {
        if (alpha.tag() == order::kind::zero) return finish(sup_coin_form(q, rate_tilde));
        if (alpha_in_01(alpha)) {
            double g = alpha.real() / (1.0 - alpha.real());
            return finish(std::max(g, 1.0) * sup_coin_form(q, rate_tilde));
        }
        double h0q = ent(q, 0.0);
        if (rate_tilde < h0q) return inf;
        if (alpha.tag() == order::kind::one) return 0.0;
        double t0 = 1.0 / tilt_coeff(alpha);
        double left = t0 * (renyi_entropy(q, flip_order(alpha)) - rate_tilde);
        ray_tail tail;
        tail.slope = h0q - rate_tilde;
        tail.level = mode_entropy(q) - h0q;
        auto f = [&q, rate_tilde](double t) {
            return t * (renyi_entropy(q, order(1.0 / (1.0 - t))) - rate_tilde);
        };
        return finish(std::max(0.0, sup_on_ray(f, t0, left, tail)));
    }
    }
    throw input_error("asymptotics: unknown direction");
}

double intrinsic_randomness(const pmf& p, order alpha, direction dir) {
    check_alpha(alpha);
    if (dir == direction::qp)
        return alpha.tag() == order::kind::zero ? inf : shannon_entropy(p);
    if (alpha_in_01(alpha)) return shannon_entropy(p);
    return renyi_entropy(p, alpha);
}

double intrinsic_asymptotics(const pmf& p, double rate_hat, order alpha, direction dir) {
    check_alpha(alpha);
    check_threshold_rate(rate_hat, "extraction rate");
    switch (dir) {
    case direction::pq: {
        if (alpha_in_01(alpha)) {
            double c = tilt_coeff(alpha); // negative here
            auto f = [&p, rate_hat, c](double t) {
                return t * (rate_hat - renyi_entropy(p, order(1.0 / (1.0 - c * t))));
            };
            return finish(maximize_on_interval(f, 0.0, 1.0).value);
        }
        return positive_part(rate_hat - renyi_entropy(p, alpha));
    }
    case direction::qp: {
        if (alpha.tag() == order::kind::zero) return 0.0;
        if (alpha_in_01(alpha)) {
            double g = alpha.real() / (1.0 - alpha.real());
            auto f = [&p, rate_hat, g](double t) {
                return t * (rate_hat - renyi_entropy(p, order(1.0 / (1.0 + g * t))));
            };
            return finish(g * maximize_on_interval(f, 0.0, 1.0).value);
        }
        return finish(sup_uniform_target_form(p, rate_hat));
    }
    case direction::max_dir: {
        if (alpha.tag() == order::kind::zero) return positive_part(rate_hat - ent(p, 0.0));
        if (alpha_in_01(alpha)) {
            double g = alpha.real() / (1.0 - alpha.real());
            auto f2 = [&p, rate_hat, g](double t, double tp) {
                double a = (g - 1.0) * tp + 1.0;
                double b = (1.0 - g) * tp + g;
                return t * b * (rate_hat - renyi_entropy(p, order(a / (a + t * b))));
            };
            return finish(maximize_on_rect(f2, 0.0, 1.0, 0.0, 1.0).value);
        }
        return finish(std::max(positive_part(rate_hat - renyi_entropy(p, alpha)),
                               sup_uniform_target_form(p, rate_hat)));
    }
    }
    throw input_error("asymptotics: unknown direction");
}

std::pair<double, double> best_set_mass_exponents(const pmf& q, double rate_tilde) {
    check_threshold_rate(rate_tilde, "set-size rate");
    double captured = finish(sup_coin_form(q, rate_tilde));
    double missed = finish(sup_uniform_target_form(q, rate_tilde));
    return {captured, missed};
}

} // namespace renyi
