#pragma once

namespace ranksurprise {

/// ln Gamma(x) for x > 0. Reentrant.
double log_gamma(double x);

/// Digamma psi(x) = d/dx ln Gamma(x) for x > 0, via upward recurrence to x >= 10
/// followed by the asymptotic expansion.
double digamma(double x);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b).
double log_beta(double a, double b);

} // namespace ranksurprise
