#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cpb/drive_protocol.hpp"
#include "cpb/qubit_model.hpp"

namespace cpb {

/// A resistor-terminated resonator acting as a thermal bath. The rates use
/// resonator.g0_over_2pi as the effective qubit-resonator coupling (the
/// degeneracy-extracted value), further reduced by g_eff_scale to model
/// quasiparticle poisoning.
struct BathParams {
  double temperature = 0.3;  // K
  ResonatorParams resonator;
  double g_eff_scale = 1.0;  // in (0, 1]

  void validate() const;
};

/// Rotating-frame Bloch vector; z = +1 is the excited state.
struct BlochState {
  double x = 0.0;
  double y = 0.0;
  double z = -1.0;

  double norm() const;
};

/// Lab-frame 2x2 density matrix, used by the Lindblad oracle.
using DensityMatrix2 = Eigen::Matrix2cd;

/// Up/down rates for both baths, 1/s.
struct RateSet {
  double gamma_c_down = 0.0;
  double gamma_c_up = 0.0;
  double gamma_h_down = 0.0;
  double gamma_h_up = 0.0;

  double total_down() const { return gamma_c_down + gamma_h_down; }
  double total_up() const { return gamma_c_up + gamma_h_up; }
};

/// Cycle-averaged steady-state quantities. Sign convention: heat currents are
/// positive when heat flows out of the bath into the qubit.
struct CycleResult {
  double f_drive = 0.0;          // Hz
  double q_dot_cold_avg = 0.0;   // W
  double q_dot_hot_avg = 0.0;    // W
  double work_avg = 0.0;         // W, drive input power
  double entropy_rate = 0.0;     // W/K, entropy production in the baths
  double max_adiabaticity = 0.0;
  int cycles_to_converge = 0;
  bool converged = false;
};

struct EngineConfig {
  QubitParams qubit;
  DriveProtocol drive;
  BathParams cold;
  BathParams hot;
  double max_omega_dt = 0.1;       // step control: w_Q,max * dt <= this
  double steady_tol = 1e-9;        // Bloch displacement at cycle boundary
  int max_cycles = 100000;
  long max_steps_per_cycle = 50'000'000;
};

/// Purcell-filtered downward rate from one bath, 1/s:
///   A * g^2 * Q_i / w_i * L(w_Q) / (1 - exp(-hbar w_Q / k_B T))
/// with g = 2 pi g[Hz] * g_eff_scale, Lorentzian filter
/// L = 1 / (1 + Q_i^2 (w_i/w_Q - w_Q/w_i)^2), and A a dimensionless
/// environment-impedance factor calibrated to the published cooling-power
/// scale. Rates scale as the square of g_eff_scale.
double transition_rate_down(const BathParams& bath, double f_q);

/// Detailed balance: Gamma_up = Gamma_down * exp(-hbar w_Q / k_B T).
double transition_rate_up(const BathParams& bath, double f_q);

RateSet transition_rates(const BathParams& cold, const BathParams& hot,
                         double f_q);

/// Right-hand side of the rotating-frame Bloch equations at time t.
BlochState bloch_rhs(const BlochState& s, double t, const QubitParams& q,
                     const DriveProtocol& p, const BathParams& cold,
                     const BathParams& hot);

/// Lab-frame Lindblad generator with jump operators between the instantaneous
/// eigenstates. Trace-free and Hermiticity-preserving.
DensityMatrix2 lindblad_rhs(const DensityMatrix2& rho, double t,
                            const QubitParams& q, const DriveProtocol& p,
                            const BathParams& cold, const BathParams& hot);

/// Unitary mapping lab (charge) frame to the instantaneous eigenbasis used by
/// the Bloch parameterization; z = Tr[V^dag rho V sigma_z] with z = +1 excited.
Eigen::Matrix2d eigenbasis_rotation(const QubitParams& q, GateCharge g);

/// Instantaneous heat current from bath i, W. Positive = out of the bath.
double heat_current(const BathParams& bath, double f_q, double z);

struct CycleIntegration {
  BlochState end_state;
  double heat_cold = 0.0;   // J per cycle, from the cold bath
  double heat_hot = 0.0;    // J per cycle, from the hot bath
  double work_in = 0.0;     // J per cycle, independent drive-power audit
  double max_norm = 0.0;    // max Bloch norm along the trajectory
  long n_steps = 0;
};

/// Fixed-step RK4 over exactly one drive period. Heat and work integrals are
/// carried as additional RK4 state so they share the integrator's order.
CycleIntegration integrate_cycle(const BlochState& initial,
                                 const EngineConfig& config);

/// Decimated (x, y, z) samples over `cycles` periods, for cross-checks.
struct Trajectory {
  std::vector<double> t;
  std::vector<BlochState> state;
};
Trajectory integrate_trajectory(const BlochState& initial,
                                const EngineConfig& config, int cycles,
                                int samples_per_cycle);

/// Iterates integrate_cycle until the Bloch vector at the cycle boundary
/// moves less than steady_tol, then reports cycle-averaged quantities.
CycleResult find_steady_cycle(const EngineConfig& config);

/// Independent steady-cycle solutions per drive frequency. Per-point failures
/// are flagged (converged = false), the sweep continues.
std::vector<CycleResult> sweep_drive_frequency(const std::vector<double>& f_grid,
                                               const EngineConfig& config,
                                               int threads = 1);

/// Otto cooling condition f_h/f_c > T_h/T_c.
bool cooling_condition(double f_c, double f_h, double t_c, double t_h);

/// Thermal excited-state population of a two-level system, 1/(1+exp(h f/kT)).
double thermal_population(double f_q, double temperature);

}  // namespace cpb
