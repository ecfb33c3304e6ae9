#pragma once

#include <utility>
#include <variant>

namespace growpop {

struct ConstantForm {
  double c;
};

/// psi(r) = a + b / (1 + r^2)
struct RationalDecayForm {
  double a;
  double b;
};

using KernelForm = std::variant<ConstantForm, RationalDecayForm>;

/// Symmetric interaction weight psi(|x_j - x_i|) with certified bounds
/// psi_star <= psi(r) <= psi_max and a valid Lipschitz constant on [0, inf).
///
/// Immutable once built; the named constructors validate the parameters and
/// fill in the bounds.
class Kernel {
 public:
  static Kernel constant(double c);
  static Kernel rational_decay(double a, double b);

  /// psi(r); throws DomainError for r < 0.
  double operator()(double r) const;

  /// psi evaluated from the squared distance. Both shipped families depend on
  /// r only through r^2, so the pairwise loop never takes a square root.
  double from_squared(double r2) const noexcept {
    if (const auto* k = std::get_if<ConstantForm>(&form_)) return k->c;
    const auto& k = std::get<RationalDecayForm>(form_);
    return k.a + k.b / (1.0 + r2);
  }

  double psi_star() const noexcept { return psi_star_; }
  double psi_max() const noexcept { return psi_max_; }
  double lipschitz() const noexcept { return lipschitz_; }

  /// True when psi is identically constant (including RationalDecay with b = 0).
  bool is_constant() const noexcept { return psi_star_ == psi_max_; }

  const KernelForm& form() const noexcept { return form_; }

 private:
  Kernel(KernelForm form, double psi_star, double psi_max, double lipschitz)
      : form_(form), psi_star_(psi_star), psi_max_(psi_max), lipschitz_(lipschitz) {}

  KernelForm form_;
  double psi_star_;
  double psi_max_;
  double lipschitz_;
};

double eval_kernel(const Kernel& kernel, double r);

/// (psi_star, psi_max)
std::pair<double, double> kernel_bounds(const Kernel& kernel);

}  // namespace growpop
