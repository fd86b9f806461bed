#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cpb/errors.hpp"

namespace cpb {

// All energies are stored as E/h in Hz. Angular frequencies (rad/s) appear
// only inside rate and ODE formulas, with explicit 2*pi conversion at the
// boundary.

/// Cooper-pair box parameters: charging and Josephson energies plus the
/// charge-state truncation window.
struct QubitParams {
  double ec_over_h = 6.8e9;  // E_C/h, Hz
  double ej_over_h = 3.5e9;  // E_J/h, Hz
  int n_charge_min = -2;
  int n_charge_max = 3;

  int n_states() const { return n_charge_max - n_charge_min + 1; }
  void validate() const;
};

/// Dimensionless offset charge N_g = C_gate V_gate / 2e.
struct GateCharge {
  double ng = 0.5;
};

enum class ResonatorRole { cold, hot };

/// A quarter-wave resonator as seen by the qubit.
struct ResonatorParams {
  double f_r = 0.0;          // Hz
  double q_total = 0.0;      // loaded quality factor
  double g0_over_2pi = 0.0;  // bare coupling g_0/2pi, Hz
  int n_fock = 5;            // photon truncation for joint diagonalization
  ResonatorRole role = ResonatorRole::cold;

  void validate() const;
};

/// Capacitance geometry entering the bare-coupling formula.
struct CouplingGeometry {
  double c_coupler = 0.0;       // F, coupler-island capacitance C_i
  double c_sigma = 0.0;         // F, island total capacitance C_Sigma
  double c_gate = 0.0;          // F
  double resonator_length = 0.0;  // m
  double cap_per_length = 0.0;    // F/m

  void validate() const;
};

/// Eigenfrequencies relative to the ground level, ascending.
struct Spectrum {
  std::vector<double> eigenvalues;      // Hz, first entry 0
  std::vector<std::string> labels;      // optional dominant-component tags
};

enum class NgBranch { below_half, above_half };

/// Charge-basis Hamiltonian of the bare box: tridiagonal, diagonal
/// 4 E_C (N - N_g)^2, off-diagonal -E_J/2. Units Hz.
Eigen::MatrixXd build_charge_hamiltonian(const QubitParams& q, GateCharge g);

/// Two-level transition frequency, sqrt(16 E_C^2 (1-2N_g)^2 + E_J^2) / h.
double qubit_frequency(const QubitParams& q, GateCharge g);

/// Inverts qubit_frequency for the requested branch of N_g.
/// Throws TargetBelowMinimum when f_target < E_J/h.
GateCharge gate_charge_for_frequency(const QubitParams& q, double f_target,
                                     NgBranch branch);

/// Mixing angle theta in (0, pi); sin(theta) = (E_J/h) / f_Q.
double mixing_angle(const QubitParams& q, GateCharge g);

/// Bare qubit-resonator coupling g_0/2pi in Hz from the capacitance geometry
/// and zero-point voltage fluctuations. The prefactor is the capacitance
/// ratio c_coupler / c_sigma.
double bare_coupling(const CouplingGeometry& geom, double f_r);

/// Joint qubit (two-level) + two-resonator Hamiltonian in Hz, dimension
/// 2 * n_fock_c * n_fock_h, assembled in the qubit energy eigenbasis.
/// Basis ordering: qubit (ground, excited) x cold Fock x hot Fock.
/// Throws DimensionOverflow above dim_cap.
Eigen::MatrixXd build_full_hamiltonian(const QubitParams& q,
                                       const ResonatorParams& res_c,
                                       const ResonatorParams& res_h,
                                       GateCharge g, double g_tilde,
                                       int dim_cap = 4096);

struct EigenSystem {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns, orthonormal
};

/// Dense symmetric eigensolve, eigenvalues ascending.
EigenSystem eigensolve_hermitian(const Eigen::MatrixXd& m);

/// First `levels` charge-basis eigenfrequencies relative to the ground level.
Spectrum charge_spectrum(const QubitParams& q, GateCharge g, int levels);

}  // namespace cpb
