#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace cpb {

using Complex = std::complex<double>;

/// Two-port chain (ABCD) matrix. b carries ohms, c carries 1/ohms.
struct TwoPortABCD {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  Complex c{0.0, 0.0};
  Complex d{1.0, 0.0};

  Complex determinant() const { return a * d - b * c; }
};

/// Series-L, shunt-C, series-L low-pass gate filter.
struct LCLFilter {
  double inductance = 5.9e-9;   // H
  double capacitance = 1.7e-12; // F
  double z0 = 50.0;             // ohm

  void validate() const;
};

TwoPortABCD series_element(Complex z);
TwoPortABCD shunt_element(Complex z);  // throws ShuntShortCircuit for z = 0
TwoPortABCD cascade(std::initializer_list<TwoPortABCD> elements);
TwoPortABCD cascade(const std::vector<TwoPortABCD>& elements);

/// S21 = 2 / (A + B/Z0 + C Z0 + D). Throws SingularNetwork on a vanishing
/// denominator.
Complex s21(const TwoPortABCD& net, double z0);

/// Closed-form LCL transmission; equals the ABCD cascade route.
Complex lcl_s21(double f, const LCLFilter& filt);

/// ABCD cascade route for the same filter, used as the dual check.
Complex lcl_s21_cascade(double f, const LCLFilter& filt);

/// Low-pass cutoff sqrt(2 / (L C)) / 2pi, Hz.
double lcl_cutoff(const LCLFilter& filt);

}  // namespace cpb
