#include "cpb/microwave_filter.hpp"

#include <cmath>

#include "cpb/constants.hpp"
#include "cpb/errors.hpp"

namespace cpb {

void LCLFilter::validate() const {
  if (inductance <= 0 || capacitance <= 0 || z0 <= 0)
    throw ValidationError("LCLFilter: all parameters must be positive");
}

TwoPortABCD series_element(Complex z) {
  return TwoPortABCD{{1.0, 0.0}, z, {0.0, 0.0}, {1.0, 0.0}};
}

TwoPortABCD shunt_element(Complex z) {
  if (z == Complex{0.0, 0.0})
    throw ShuntShortCircuit("shunt_element: zero shunt impedance");
  return TwoPortABCD{{1.0, 0.0}, {0.0, 0.0}, 1.0 / z, {1.0, 0.0}};
}

namespace {
TwoPortABCD multiply(const TwoPortABCD& l, const TwoPortABCD& r) {
  return TwoPortABCD{l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
                     l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}
}  // namespace

TwoPortABCD cascade(const std::vector<TwoPortABCD>& elements) {
  TwoPortABCD out;  // identity
  for (const auto& e : elements) out = multiply(out, e);
  return out;
}

TwoPortABCD cascade(std::initializer_list<TwoPortABCD> elements) {
  return cascade(std::vector<TwoPortABCD>(elements));
}

Complex s21(const TwoPortABCD& net, double z0) {
  const Complex denom = net.a + net.b / z0 + net.c * z0 + net.d;
  if (std::abs(denom) == 0.0)
    throw SingularNetwork("s21: vanishing denominator");
  return 2.0 / denom;
}

Complex lcl_s21(double f, const LCLFilter& filt) {
  filt.validate();
  const double w = constants::two_pi * f;
  const Complex j{0.0, 1.0};
  const Complex zl = j * w * filt.inductance;
  const Complex zc = 1.0 / (j * w * filt.capacitance);
  const Complex z0 = filt.z0;
  return 2.0 * z0 * zc /
         (2.0 * z0 * (zl + zc) + (2.0 * zl * zc + zl * zl) + z0 * z0);
}

Complex lcl_s21_cascade(double f, const LCLFilter& filt) {
  filt.validate();
  const double w = constants::two_pi * f;
  const Complex j{0.0, 1.0};
  const Complex zl = j * w * filt.inductance;
  const Complex zc = 1.0 / (j * w * filt.capacitance);
  return s21(cascade({series_element(zl), shunt_element(zc), series_element(zl)}),
             filt.z0);
}

double lcl_cutoff(const LCLFilter& filt) {
  filt.validate();
  return std::sqrt(2.0 / (filt.inductance * filt.capacitance)) /
         constants::two_pi;
}

}  // namespace cpb
