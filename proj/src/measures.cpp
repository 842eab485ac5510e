#include "renyi/measures.hpp"

#include <algorithm>
#include <cmath>

#include "renyi/errors.hpp"

namespace renyi {

order::order(double a) : value_(a) {
    if (std::isnan(a)) throw input_error("order: NaN is not a valid order");
    if (a == -renyi::inf) tag_ = kind::neg_inf;
    else if (a == renyi::inf) tag_ = kind::pos_inf;
    else if (a == 0.0) tag_ = kind::zero;
    else if (a == 1.0) tag_ = kind::one;
    else tag_ = kind::finite;
}

order parse_order(const std::string& token) {
    if (token == "inf" || token == "+inf") return order::pos_inf();
    if (token == "-inf") return order::neg_inf();
    try {
        std::size_t pos = 0;
        double v = std::stod(token, &pos);
        if (pos != token.size()) throw input_error("order: trailing characters in '" + token + "'");
        return order(v);
    } catch (const std::exception&) {
        throw input_error("order: cannot parse '" + token + "'");
    }
}

double shannon_entropy(const pmf& p) {
    double h = 0.0;
    for (std::size_t i : p.support()) h -= p.prob(i) * p.log_prob(i);
    return h;
}

double renyi_entropy(const pmf& p, order alpha) {
    switch (alpha.tag()) {
    case order::kind::neg_inf:
        return -std::log(p.min_support_prob());
    case order::kind::zero:
        return std::log(static_cast<double>(p.support_size()));
    case order::kind::one:
        return shannon_entropy(p);
    case order::kind::pos_inf:
        return -std::log(p.max_prob());
    case order::kind::finite:
        break;
    }
    double a = alpha.real();
    if (std::abs(a - 1.0) <= 1e-6) {
        // The generic form divides a near-zero log-sum by (1 - a); next to
        // order 1 that amplifies rounding noise, so expand to first order.
        double h1 = shannon_entropy(p);
        double v = 0.0;
        for (std::size_t i : p.support()) {
            double d = -p.log_prob(i) - h1;
            v += p.prob(i) * d * d;
        }
        return h1 - 0.5 * (a - 1.0) * v;
    }
    log_sum_exp_acc acc;
    for (std::size_t i : p.support()) acc.add(a * p.log_prob(i));
    return acc.value() / (1.0 - a);
}

double mode_entropy(const pmf& p) {
    double s = 0.0;
    for (std::size_t i : p.support()) s -= p.log_prob(i);
    return s / static_cast<double>(p.support_size());
}

pmf tilted(const pmf& p, order alpha) {
    std::vector<double> w(p.size(), 0.0);
    switch (alpha.tag()) {
    case order::kind::one:
        return p;
    case order::kind::zero:
        for (std::size_t i : p.support()) w[i] = 1.0;
        break;
    case order::kind::pos_inf: {
        double top = std::log(p.max_prob()) - 1e-12;
        for (std::size_t i : p.support())
            if (p.log_prob(i) >= top) w[i] = 1.0;
        break;
    }
    case order::kind::neg_inf: {
        double bottom = std::log(p.min_support_prob()) + 1e-12;
        for (std::size_t i : p.support())
            if (p.log_prob(i) <= bottom) w[i] = 1.0;
        break;
    }
    case order::kind::finite: {
        double a = alpha.real();
        // Shift so the largest weight is exp(0); keeps alpha up to 1e6 finite.
        double shift = a >= 0.0 ? std::log(p.max_prob()) : std::log(p.min_support_prob());
        for (std::size_t i : p.support()) w[i] = std::exp(a * (p.log_prob(i) - shift));
        break;
    }
    }
    return pmf(std::move(w), p.labels());
}

double tilted_cross_entropy(const pmf& p, order alpha) {
    pmf t = tilted(p, alpha);
    double s = 0.0;
    for (std::size_t i : t.support()) s -= t.prob(i) * p.log_prob(i);
    return s;
}

namespace {

void check_divergence_args(const pmf& p, const pmf& q, order alpha) {
    if (p.size() != q.size())
        throw input_error("divergence: alphabets must have equal size");
    if (alpha.tag() == order::kind::neg_inf ||
        (alpha.tag() == order::kind::finite && alpha.real() < 0.0))
        throw input_error("divergence: order must be nonnegative");
}

bool same_distribution(const pmf& p, const pmf& q) {
    return p.probs() == q.probs();
}

} // namespace

double kl_divergence(const pmf& p, const pmf& q) {
    double s = 0.0;
    for (std::size_t i : p.support()) {
        if (q.prob(i) == 0.0) return inf;
        s += p.prob(i) * (p.log_prob(i) - q.log_prob(i));
    }
    return positive_part(s);
}

double renyi_divergence(const pmf& p, const pmf& q, order alpha) {
    check_divergence_args(p, q, alpha);
    if (same_distribution(p, q)) return 0.0;

    switch (alpha.tag()) {
    case order::kind::zero: {
        log_sum_exp_acc acc;
        for (std::size_t i : p.support())
            if (q.prob(i) > 0.0) acc.add(q.log_prob(i));
        return positive_part(-acc.value());
    }
    case order::kind::one:
        return kl_divergence(p, q);
    case order::kind::pos_inf: {
        double best = -inf;
        for (std::size_t i : p.support()) {
            if (q.prob(i) == 0.0) return inf;
            best = std::max(best, p.log_prob(i) - q.log_prob(i));
        }
        return positive_part(best);
    }
    default:
        break;
    }

    double a = alpha.real();
    log_sum_exp_acc acc;
    for (std::size_t i : p.support()) {
        if (q.prob(i) == 0.0) {
            if (a > 1.0) return inf;
            continue; // dropped for orders below 1
        }
        acc.add(a * p.log_prob(i) + (1.0 - a) * q.log_prob(i));
    }
    double lse = acc.value(); // -inf on fully disjoint supports
    if (lse == -inf) return inf;
    return positive_part(lse / (a - 1.0));
}

double max_renyi(const pmf& p, const pmf& q, order alpha) {
    return std::max(renyi_divergence(p, q, alpha), renyi_divergence(q, p, alpha));
}

double sum_renyi(const pmf& p, const pmf& q, order alpha) {
    double a = renyi_divergence(p, q, alpha);
    double b = renyi_divergence(q, p, alpha);
    if (a == inf || b == inf) return inf;
    return a + b;
}

} // namespace renyi
