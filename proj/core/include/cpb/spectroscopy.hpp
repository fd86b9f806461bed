#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cpb/qubit_model.hpp"

namespace cpb {

/// Feedline notch resonance parameters used to render |S21| dips.
struct NotchResonance {
  double f_r = 0.0;         // Hz
  double q_loaded = 0.0;    // loaded (total) quality factor
  double q_coupling = 0.0;  // coupling quality factor

  bool overcoupled() const;  // q_coupling <= internal Q
  void validate() const;
};

/// Two-tone sweep configuration. n_p = pump_photon_scale * P_pump.
struct TwoToneConfig {
  double f_probe = 8.001e9;             // Hz
  std::vector<double> pump_grid;        // Hz
  std::vector<double> ng_grid;
  std::vector<double> p_pump_grid;      // W
  double pump_photon_scale = 1.0;       // photons per watt

  void validate() const;
};

/// Qubit decoherence rates, rad/s: Gamma_2 = Gamma_1/2 + Gamma_phi.
struct DecoherenceRates {
  double gamma1_down = 0.0;
  double gamma2_down = 0.0;
  double gamma_phi() const { return gamma2_down - 0.5 * gamma1_down; }

  void validate() const;
};

struct LorentzianFit {
  double center = 0.0;     // Hz
  double fwhm = 0.0;       // Hz
  double amplitude = 0.0;
  double offset = 0.0;
  double residual_norm = 0.0;
  int iterations = 0;
};

/// |S21|(ng, f) map rendered from the full-Hamiltonian spectrum. Each ground
/// transition with photonic character becomes a symmetric notch dip with width
/// f_r / q_loaded and depth = photonic weight * (1 - q_loaded / q_coupling).
/// Returns a matrix with f_grid rows and ng_grid columns, values in [0, 1].
Eigen::MatrixXd one_tone_map(const QubitParams& q, const ResonatorParams& res_c,
                             const ResonatorParams& res_h,
                             const NotchResonance& notch_c,
                             const NotchResonance& notch_h,
                             const std::vector<double>& ng_grid,
                             const std::vector<double>& f_grid);

/// Qubit-ground dispersive pull of the branch resonator at the degeneracy
/// point, from full-Hamiltonian eigenvalues. Requires |Delta| > 5 g.
double dispersive_shift(const QubitParams& q, const ResonatorParams& res_c,
                        const ResonatorParams& res_h, ResonatorRole branch);

/// g_i = sqrt(chi_i * Delta_i). Throws NegativeProduct when chi * delta < 0.
double effective_coupling_from_shift(double chi, double delta);

/// Steady-state excited population under continuous pumping. The detuning
/// enters as 2 pi (f_Q - f_pump) / Gamma_2, keeping the half-width consistent
/// with linewidth_model.
double steady_state_population(double f_q, double f_pump, double n_p,
                               double g_h_rad, const DecoherenceRates& rates);

/// Power-broadened linewidth, Hz:
///   2 pi df = Gamma_2 sqrt(1 + 4 n_p g_h^2 / (Gamma_1 Gamma_2)).
double linewidth_model(double n_p, double g_h_rad, const DecoherenceRates& rates);

/// Levenberg-Marquardt fit of offset + amp / (1 + ((x-c)/(fwhm/2))^2).
LorentzianFit fit_lorentzian(const std::vector<double>& x,
                             const std::vector<double>& y);

/// Weighted linear fit of (df)^2 vs pump power; returns the zero-power
/// decoherence rate 2 pi sqrt(intercept), rad/s.
double extrapolate_gamma2(const std::vector<double>& p_pump,
                          const std::vector<double>& linewidth_sq);

/// Pointwise convex combination of even- and odd-parity maps.
Eigen::MatrixXd parity_mix(const Eigen::MatrixXd& even_map,
                           const Eigen::MatrixXd& odd_map, double p_even);

/// Odd-parity map from the even map: a periodic shift of the ng axis by 0.5
/// (one tunneled quasiparticle offsets the gate charge by 1e). The ng grid
/// must cover one period [0, 1) uniformly.
Eigen::MatrixXd odd_parity_map(const Eigen::MatrixXd& even_map,
                               const std::vector<double>& ng_grid);

}  // namespace cpb
