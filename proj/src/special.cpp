#include "ciprng/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ciprng/error.hpp"

namespace ciprng {
namespace {

using real = long double;

constexpr real kEpsilon = std::numeric_limits<real>::epsilon();
constexpr real kTiny = std::numeric_limits<real>::min() / kEpsilon;
constexpr int kMaxIterations = 1'000'000;

void check_domain(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0) || std::isinf(a)) {
    throw Error(ErrorCode::DomainError,
                "incomplete gamma needs a > 0, x >= 0 (got a=" + std::to_string(a) + ", x=" + std::to_string(x) + ")");
  }
}

// exp(-x) x^a / Gamma(a)
real prefactor(real a, real x) { return std::exp(-x + a * std::log(x) - std::lgamma(a)); }

// Lower regularized gamma by its power series; converges fast for x < a + 1.
real lower_series(real a, real x) {
  real ap = a;
  real term = 1.0L / a;
  real sum = term;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0L;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEpsilon) break;
  }
  return sum * prefactor(a, x);
}

// Upper regularized gamma by its continued fraction (modified Lentz); x >= a + 1.
real upper_fraction(real a, real x) {
  real b = x + 1.0L - a;
  real c = 1.0L / kTiny;
  real d = 1.0L / b;
  real h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const real an = -static_cast<real>(i) * (static_cast<real>(i) - a);
    b += 2.0L;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0L / d;
    const real delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0L) < kEpsilon) break;
  }
  return h * prefactor(a, x);
}

}  // namespace

double erfc(double x) { return std::erfc(x); }

double igamc(double a, double x) {
  check_domain(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const real la = a, lx = x;
  if (lx < la + 1.0L) return std::clamp(static_cast<double>(1.0L - lower_series(la, lx)), 0.0, 1.0);
  return std::clamp(static_cast<double>(upper_fraction(la, lx)), 0.0, 1.0);
}

double igam(double a, double x) {
  check_domain(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const real la = a, lx = x;
  if (lx < la + 1.0L) return std::clamp(static_cast<double>(lower_series(la, lx)), 0.0, 1.0);
  return std::clamp(static_cast<double>(1.0L - upper_fraction(la, lx)), 0.0, 1.0);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace ciprng
