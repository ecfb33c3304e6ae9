#include "growpop/kernel.hpp"

#include <cmath>
#include <string>

#include "growpop/error.hpp"

namespace growpop {

namespace {

// max_r |d/dr 1/(1+r^2)| = 2r/(1+r^2)^2 at r = 1/sqrt(3)
const double kRationalSlope = 3.0 * std::sqrt(3.0) / 8.0;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw DomainError(std::string("kernel parameter ") + name + " must be finite");
}

}  // namespace

Kernel Kernel::constant(double c) {
  require_finite(c, "c");
  if (!(c > 0.0)) throw DomainError("constant kernel requires c > 0");
  return Kernel(ConstantForm{c}, c, c, 0.0);
}

Kernel Kernel::rational_decay(double a, double b) {
  require_finite(a, "a");
  require_finite(b, "b");
  if (!(a > 0.0)) throw DomainError("rational kernel requires a > 0");
  if (b < 0.0) throw DomainError("rational kernel requires b >= 0");
  return Kernel(RationalDecayForm{a, b}, a, a + b, b * kRationalSlope);
}

double Kernel::operator()(double r) const {
  if (!(r >= 0.0)) throw DomainError("kernel evaluated at negative or NaN distance");
  return from_squared(r * r);
}

double eval_kernel(const Kernel& kernel, double r) { return kernel(r); }

std::pair<double, double> kernel_bounds(const Kernel& kernel) {
  return {kernel.psi_star(), kernel.psi_max()};
}

}  // namespace growpop
