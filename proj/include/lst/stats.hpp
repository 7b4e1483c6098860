#pragma once

#include <span>
#include <vector>

namespace lst {

double mean(std::span<const double> v);

// Sample standard deviation (n-1 denominator); 0 for a single observation.
double sample_std(std::span<const double> v);

// Linear-interpolation quantile (type 7), q in [0, 1]. Input need not be sorted.
double quantile_type7(std::span<const double> v, double q);

// Regularized incomplete beta I_x(a, b), evaluated with a Lentz-style
// continued fraction. Relative accuracy ~1e-14 over the parameter ranges
// exercised here (t-distribution tails).
double regularized_incomplete_beta(double a, double b, double x);

// Student-t CDF and two-sided p-value with `dof` degrees of freedom.
double student_t_cdf(double t, double dof);
double student_t_two_sided_p(double t, double dof);

}  // namespace lst
