// Shared numeric building blocks: adaptive quadrature, binary entropy,
// confidence-interval helpers and a chi-square tail probability.
#pragma once

#include <cstdint>
#include <functional>

namespace ircc {

// Adaptive Gauss-Kronrod (7,15) integration of f over [a, b] to the given
// absolute tolerance.  Bisects intervals whose embedded error estimate is
// too large; throws DomainError if the interval budget is exhausted before
// the tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_intervals = 4000);

// Natural-log binary entropy -d ln d - (1-d) ln(1-d); returns 0 at d in {0,1}.
double binary_entropy_nats(double d);

// ln(1 + e^t) evaluated without overflow for any t.
double log1p_exp(double t);

// Two-sided z value for a 99% confidence interval.
inline constexpr double kZ99 = 2.5758293035489004;

// Wilson score half-width for a binomial proportion; well behaved at
// errors == 0 where the plain normal approximation collapses to zero.
double wilson_half_width(std::int64_t errors, std::int64_t trials, double z);

// Plain normal-approximation half-width z * sqrt(p(1-p)/n).
double binomial_half_width(double p_hat, std::int64_t trials, double z);

// Survival function P[X > x] of a chi-square variable with k degrees of
// freedom, via the regularized incomplete gamma function.
double chi_square_sf(double x, int k);

// Power <-> decibel conversions (10 log10).
double db_from_linear(double x);
double linear_from_db(double db);

}  // namespace ircc
