#ifndef PENSTAT_SPECIAL_HPP
#define PENSTAT_SPECIAL_HPP

namespace penstat {

// ln Gamma(x) for x > 0, Lanczos approximation.
double ln_gamma(double x);

// Regularized incomplete beta function I_x(a, b) for a, b > 0 and
// x in [0, 1], evaluated with the modified Lentz continued fraction to
// 1e-12 relative accuracy, switching to the complementary expansion at
// x = (a + 1) / (a + b + 2).
double regularized_incomplete_beta(double a, double b, double x);

// Two-tailed tail mass of the Student t distribution with nu > 0 degrees of
// freedom: P(|T| >= |t|).
double student_t_two_tailed(double t, double nu);

}  // namespace penstat

#endif  // PENSTAT_SPECIAL_HPP
