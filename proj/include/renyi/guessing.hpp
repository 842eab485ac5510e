#pragma once

#include <utility>

#include "renyi/pmf.hpp"

namespace renyi {

// Cipher-guessing query: message source, key source, moment order rho > 0,
// and a key rate in nats (>= 0) for the uniform-key variant.
struct guess_query {
    pmf p_source;
    pmf p_key;
    double rho = 1.0;
    double rate = 0.0;
};

// Exponent of the rho-th moment of the number of guesses a wiretapper needs
// when the message source p is protected by a uniform key of `rate` nats per
// symbol: max over distributions q of rho * min{H(q), rate} - D(q || p).
// Nondecreasing and concave in rate; equals rho * H_{1/(1+rho)}(p) once rate
// reaches the support entropy of p.
double guessing_exponent(const pmf& p, double rho, double rate);

// {lower, upper} bounds on the same exponent when the uniform key is replaced
// by i.i.d. draws from p_key. lower <= upper always; the bounds coincide when
// p_key is uniform.
std::pair<double, double> guessing_bounds(const guess_query& query);

} // namespace renyi
