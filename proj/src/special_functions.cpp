#include <ranksurprise/special_functions.hpp>

#include <ranksurprise/error.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace ranksurprise {

double log_gamma(double x) {
    if (!(x > 0.0))
        throw InvalidArgument("log_gamma requires x > 0, got " + std::to_string(x));
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

double digamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw InvalidArgument("digamma requires finite x > 0, got " + std::to_string(x));
    double result = 0.0;
    while (x < 10.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    // psi(x) ~ ln x - 1/(2x) - sum B_2k / (2k x^2k)
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series =
        inv2 * (1.0 / 12 -
                inv2 * (1.0 / 120 -
                        inv2 * (1.0 / 252 -
                                inv2 * (1.0 / 240 -
                                        inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 * (1.0 / 12)))))));
    return result + std::log(x) - 0.5 * inv - series;
}

double log_beta(double a, double b) {
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

} // namespace ranksurprise
