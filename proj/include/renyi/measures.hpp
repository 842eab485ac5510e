#pragma once

#include <string>

#include "renyi/pmf.hpp"

namespace renyi {

// Entropy / divergence order on the extended real line. Exact tags for the
// limit orders {-inf, 0, 1, +inf} so special-case formulas apply exactly.
class order {
public:
    enum class kind { neg_inf, zero, one, pos_inf, finite };

    order(double a); // NOLINT: implicit by design, 0 and 1 map to exact tags

    static order neg_inf() { return order(-renyi::inf); }
    static order pos_inf() { return order(renyi::inf); }

    kind tag() const { return tag_; }
    double real() const { return value_; } // +-inf at the infinite tags
    bool is_finite() const { return tag_ == kind::finite || tag_ == kind::zero || tag_ == kind::one; }

private:
    kind tag_;
    double value_;
};

// Token forms accepted everywhere an order appears: decimal literals plus the
// exact tokens 0, 1, inf, -inf.
order parse_order(const std::string& token);

// Entropies are defined for all orders in [-inf, +inf]; values in nats.
double renyi_entropy(const pmf& p, order alpha);
double shannon_entropy(const pmf& p);
double mode_entropy(const pmf& p);

// p^alpha / sum p^alpha on supp(p), over the same alphabet (zeros preserved).
// +inf and -inf tilt to the uniform distribution over argmax / argmin.
pmf tilted(const pmf& p, order alpha);
double tilted_cross_entropy(const pmf& p, order alpha);

// Divergences take orders in [0, +inf] only; negative orders are rejected.
// Alphabets are aligned by index and must have equal size. Singular
// combinations return +inf.
double renyi_divergence(const pmf& p, const pmf& q, order alpha);
double kl_divergence(const pmf& p, const pmf& q);
double max_renyi(const pmf& p, const pmf& q, order alpha);
double sum_renyi(const pmf& p, const pmf& q, order alpha);

} // namespace renyi
