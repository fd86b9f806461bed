#include "cpb/drive_protocol.hpp"

#include <cmath>

#include "cpb/constants.hpp"
#include "cpb/errors.hpp"

namespace cpb {

void DriveProtocol::validate() const {
  if (f_drive <= 0) throw ValidationError("DriveProtocol: f_drive must be > 0");
  if (a <= 0) throw ValidationError("DriveProtocol: a must be > 0");
  if (ng_c == ng_h)
    throw ValidationError("DriveProtocol: endpoints ng_c and ng_h coincide");
  if (samples_per_period < 64)
    throw ValidationError("DriveProtocol: samples_per_period must be >= 64");
}

double q_waveform(const DriveProtocol& p, double t) {
  const double phase = constants::two_pi * p.f_drive * t;
  return 0.5 * (1.0 + std::tanh(p.a * std::cos(phase)) / std::tanh(p.a));
}

double dq_dt(const DriveProtocol& p, double t) {
  const double w = constants::two_pi * p.f_drive;
  const double c = std::cos(w * t);
  const double sech = 1.0 / std::cosh(p.a * c);
  return -0.5 * (p.a * w / std::tanh(p.a)) * sech * sech * std::sin(w * t);
}

GateCharge ng_of_t(const DriveProtocol& p, double t) {
  return GateCharge{p.ng_c + (p.ng_h - p.ng_c) * q_waveform(p, t)};
}

double dng_dt(const DriveProtocol& p, double t) {
  return (p.ng_h - p.ng_c) * dq_dt(p, t);
}

double qubit_frequency_of_t(const QubitParams& q, const DriveProtocol& p,
                            double t) {
  return qubit_frequency(q, ng_of_t(p, t));
}

double bloch_drive_coefficient(const QubitParams& q, const DriveProtocol& p,
                               double t) {
  // 8 E_C E_J dNg/dt / (hbar w_Q)^2 reduces to 8 ec ej dNg/dt / f_Q^2 with
  // all energies expressed as E/h in Hz.
  const double fq = qubit_frequency_of_t(q, p, t);
  return 8.0 * q.ec_over_h * q.ej_over_h * dng_dt(p, t) / (fq * fq);
}

double adiabaticity_metric(const QubitParams& q, const DriveProtocol& p,
                           double t) {
  const double wq = constants::two_pi * qubit_frequency_of_t(q, p, t);
  return std::abs(bloch_drive_coefficient(q, p, t)) / wq;
}

}  // namespace cpb
