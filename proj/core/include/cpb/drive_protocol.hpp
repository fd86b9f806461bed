#pragma once

#include "cpb/qubit_model.hpp"

namespace cpb {

/// Trapezoidal gate-charge drive
///   q(t) = (1/2) [1 + tanh(a cos(2 pi f_drive t)) / tanh(a)]
///   N_g(t) = ng_c + (ng_h - ng_c) q(t)
/// Phase convention: t = 0 sits at the hot endpoint (q = 1, N_g = ng_h).
struct DriveProtocol {
  double f_drive = 10e6;     // Hz
  double a = 2.0;            // sharpness; a -> inf approaches a square wave
  double ng_c = 0.0;         // cold endpoint (qubit at f_c)
  double ng_h = 0.0;         // hot endpoint (qubit at f_h)
  int samples_per_period = 256;

  void validate() const;
};

/// Waveform value in [0, 1].
double q_waveform(const DriveProtocol& p, double t);

/// Analytic time derivative of q_waveform, 1/s.
double dq_dt(const DriveProtocol& p, double t);

GateCharge ng_of_t(const DriveProtocol& p, double t);
double dng_dt(const DriveProtocol& p, double t);

/// Instantaneous qubit frequency f_Q(N_g(t)), Hz.
double qubit_frequency_of_t(const QubitParams& q, const DriveProtocol& p,
                            double t);

/// Dimensionless adiabaticity ratio: the off-diagonal Bloch drive coefficient
/// 8 E_C E_J dNg/dt / (hbar^2 w_Q^2) divided by w_Q. Much less than 1 means
/// the drive is adiabatic.
double adiabaticity_metric(const QubitParams& q, const DriveProtocol& p,
                           double t);

/// The Bloch off-diagonal coupling coefficient 8 E_C E_J dNg/dt /
/// (hbar^2 w_Q^2), in 1/s. Equals d(theta)/dt of the instantaneous eigenbasis.
double bloch_drive_coefficient(const QubitParams& q, const DriveProtocol& p,
                               double t);

}  // namespace cpb
