#pragma once

#include <complex>
#include <string>

#include "btq/rational.hpp"

namespace btq {

using cxd = std::complex<double>;

enum class Domain { plane, disc };

std::string domain_name(Domain d);
Domain domain_from_name(const std::string& name);

/// Base phase space with its h-family of probability measures:
///   plane: dmu_h(z) = exp(-|z|^2/h) (pi h)^-1 dz,        h > 0
///   disc:  dmu_h(z) = ((1-h)/(pi h)) (1-|z|^2)^{1/h-2} dz,  0 < h < 1/2
class DomainSpec {
 public:
  static DomainSpec plane(double h);
  static DomainSpec disc(double h);

  Domain kind() const { return kind_; }
  double h() const { return h_; }

 private:
  DomainSpec(Domain kind, double h) : kind_(kind), h_(h) {}
  Domain kind_;
  double h_;
};

/// Monomial moment against dmu_h, in closed form (no quadrature):
///   integral of z^a conj(z)^b exp(-c|z|^2) dmu_h(z).
/// Zero unless a == b by angular orthogonality. The disc family supports
/// c = 0 only (pure Beta-function moments).
cxd moment(const DomainSpec& dom, int a, int b, const Rational& c = Rational());

/// The nonzero radial value moment(p, p, c) as a real number.
///   plane: p! h^p / (1 + c h)^{p+1}
///   disc:  p! h^p / prod_{i=1}^{p-1} (1 + i h)
double radial_moment(const DomainSpec& dom, int p, const Rational& c = Rational());

}  // namespace btq
