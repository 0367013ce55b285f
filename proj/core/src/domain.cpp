#include "btq/domain.hpp"

#include <stdexcept>

namespace btq {

std::string domain_name(Domain d) { return d == Domain::plane ? "plane" : "disc"; }

Domain domain_from_name(const std::string& name) {
  if (name == "plane") return Domain::plane;
  if (name == "disc") return Domain::disc;
  throw std::invalid_argument("unknown domain: " + name);
}

DomainSpec DomainSpec::plane(double h) {
  if (!(h > 0.0)) throw std::invalid_argument("plane: h must be positive");
  return DomainSpec(Domain::plane, h);
}

DomainSpec DomainSpec::disc(double h) {
  // weight exponent 1/h - 2 must exceed -1 with margin
  if (!(h > 0.0 && h < 0.5)) throw std::invalid_argument("disc: requires 0 < h < 1/2");
  return DomainSpec(Domain::disc, h);
}

double radial_moment(const DomainSpec& dom, int p, const Rational& c) {
  if (p < 0) throw std::invalid_argument("radial_moment: negative power");
  const double h = dom.h();
  if (dom.kind() == Domain::plane) {
    const double ch = c.value() * h;
    double m = 1.0 / (1.0 + ch);
    for (int i = 0; i < p; ++i) m *= (i + 1) * h / (1.0 + ch);
    return m;
  }
  if (!c.is_zero()) throw std::invalid_argument("disc moments require rate c = 0");
  // m_{p+1} = m_p (p+1) h / (1 + p h), m_0 = 1
  double m = 1.0;
  for (int i = 0; i < p; ++i) m *= (i + 1) * h / (1.0 + i * h);
  return m;
}

cxd moment(const DomainSpec& dom, int a, int b, const Rational& c) {
  if (a < 0 || b < 0) throw std::invalid_argument("moment: negative exponent");
  if (a != b) {
    if (dom.kind() == Domain::disc && !c.is_zero())
      throw std::invalid_argument("disc moments require rate c = 0");
    return cxd(0.0, 0.0);
  }
  return cxd(radial_moment(dom, a, c), 0.0);
}

}  // namespace btq
