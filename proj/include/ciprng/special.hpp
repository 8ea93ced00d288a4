#pragma once

namespace ciprng {

/// Complementary error function, in [0, 2].
double erfc(double x);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Requires a > 0 and x >= 0; throws Error(DomainError) otherwise.
double igamc(double a, double x);

/// Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x), computed on the
/// side where it does not lose precision.
double igam(double a, double x);

/// Standard normal CDF.
double normal_cdf(double z);

/// Upper tail of the chi-square distribution with `dof` degrees of freedom.
inline double chi_square_sf(double chi2, double dof) { return igamc(dof / 2.0, chi2 / 2.0); }

/// Chi-square CDF, the P = F(X) value reported by DieHARD-style tests.
inline double chi_square_cdf(double chi2, double dof) { return igam(dof / 2.0, chi2 / 2.0); }

}  // namespace ciprng
