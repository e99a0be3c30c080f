#pragma once

#include <cmath>
#include <stdexcept>

namespace grn {

namespace detail {

// Hill terms evaluated as t = (x/K)^n so that activation and repression
// share one denominator and their sum stays within 1 ulp of 1.
// Tolerates slightly negative x (clamped to 0): adaptive integrators probe
// trial states that can undershoot zero before the step is rejected.
inline double hill_ratio(double x, double K, double n) {
    if (x <= 0.0) return 0.0;
    double t = std::pow(x / K, n);
    return t;
}

inline double hill_act_unchecked(double x, double K, double n) {
    double t = hill_ratio(x, K, n);
    if (std::isinf(t)) return 1.0;
    return t / (1.0 + t);
}

inline double hill_rep_unchecked(double x, double K, double n) {
    double t = hill_ratio(x, K, n);
    if (std::isinf(t)) return 0.0;
    return 1.0 / (1.0 + t);
}

} // namespace detail

/// Cooperative activation x^n / (K^n + x^n). Monotone nondecreasing in x,
/// 0 at x = 0 and 1/2 at x = K.
inline double hill_activation(double x, double K, double n) {
    if (x < 0.0) throw std::domain_error("hill_activation: negative concentration");
    if (K <= 0.0) throw std::domain_error("hill_activation: nonpositive dissociation constant");
    return detail::hill_act_unchecked(x, K, n);
}

/// Cooperative repression K^n / (K^n + x^n) = 1 - hill_activation(x, K, n).
inline double hill_repression(double x, double K, double n) {
    if (x < 0.0) throw std::domain_error("hill_repression: negative concentration");
    if (K <= 0.0) throw std::domain_error("hill_repression: nonpositive dissociation constant");
    return detail::hill_rep_unchecked(x, K, n);
}

} // namespace grn
