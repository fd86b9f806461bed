#include "cpb/otto_engine.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "cpb/constants.hpp"

namespace cpb {

using namespace constants;

void BathParams::validate() const {
  if (temperature <= 0) throw ValidationError("BathParams: temperature must be > 0");
  if (g_eff_scale <= 0 || g_eff_scale > 1)
    throw ValidationError("BathParams: g_eff_scale must be in (0, 1]");
  resonator.validate();
}

double BlochState::norm() const { return std::sqrt(x * x + y * y + z * z); }

double transition_rate_down(const BathParams& bath, double f_q) {
  const double wq = two_pi * f_q;
  const double wi = two_pi * bath.resonator.f_r;
  const double qi = bath.resonator.q_total;
  const double detune = wi / wq - wq / wi;
  const double lorentz = 1.0 / (1.0 + qi * qi * detune * detune);
  // Golden-rule rate for a qubit coupled through a Q_i-filtered resonator to
  // a resistive Johnson-Nyquist bath: Purcell form A g^2 Q_i / w_i, quadratic
  // in the coupling so quasiparticle poisoning (g_eff_scale) suppresses rates
  // by the square of the scale. The published model omits the environment
  // impedance that sets the absolute rate scale; env_impedance_factor
  // calibrates it against the reported peak cooling power (~150 aW at
  // Q_c = Q_h = 2 and 300 mK). The ideal vacuum-Purcell limit would be 4.
  constexpr double env_impedance_factor = 80.0;
  const double g_rad =
      two_pi * bath.resonator.g0_over_2pi * bath.g_eff_scale;
  const double x = f_q / (kb_over_h * bath.temperature);
  const double bose = 1.0 / (1.0 - std::exp(-x));
  return (env_impedance_factor * g_rad * g_rad * qi / wi) * lorentz * bose;
}

double transition_rate_up(const BathParams& bath, double f_q) {
  const double x = f_q / (kb_over_h * bath.temperature);
  return transition_rate_down(bath, f_q) * std::exp(-x);
}

RateSet transition_rates(const BathParams& cold, const BathParams& hot,
                         double f_q) {
  RateSet r;
  r.gamma_c_down = transition_rate_down(cold, f_q);
  r.gamma_c_up = r.gamma_c_down * std::exp(-f_q / (kb_over_h * cold.temperature));
  r.gamma_h_down = transition_rate_down(hot, f_q);
  r.gamma_h_up = r.gamma_h_down * std::exp(-f_q / (kb_over_h * hot.temperature));
  return r;
}

BlochState bloch_rhs(const BlochState& s, double t, const QubitParams& q,
                     const DriveProtocol& p, const BathParams& cold,
                     const BathParams& hot) {
  const double fq = qubit_frequency_of_t(q, p, t);
  const double wq = two_pi * fq;
  const double b = bloch_drive_coefficient(q, p, t);
  const RateSet r = transition_rates(cold, hot, fq);
  const double gd = r.total_down(), gu = r.total_up();
  BlochState d;
  d.x = -0.5 * (gd + gu) * s.x - wq * s.y - b * s.z;
  d.y = wq * s.x - 0.5 * (gd + gu) * s.y;
  d.z = b * s.x - (gd + gu) * s.z - (gd - gu);
  return d;
}

Eigen::Matrix2d eigenbasis_rotation(const QubitParams& q, GateCharge g) {
  // V = exp(-i alpha sigma_y / 2) with alpha = theta - pi brings the
  // two-level charge Hamiltonian to +(h f_Q / 2) sigma_z, so the first
  // rotated basis vector is the excited state (z = +1).
  const double half = 0.5 * (mixing_angle(q, g) - pi);
  Eigen::Matrix2d v;
  v << std::cos(half), -std::sin(half), std::sin(half), std::cos(half);
  return v;
}

DensityMatrix2 lindblad_rhs(const DensityMatrix2& rho, double t,
                            const QubitParams& q, const DriveProtocol& p,
                            const BathParams& cold, const BathParams& hot) {
  const GateCharge g = ng_of_t(p, t);
  const double eps = 4.0 * q.ec_over_h * (1.0 - 2.0 * g.ng);

  // H/hbar in the charge basis, rad/s.
  Eigen::Matrix2d h_over_hbar;
  h_over_hbar << -0.5 * eps, -0.5 * q.ej_over_h,
                 -0.5 * q.ej_over_h, 0.5 * eps;
  h_over_hbar *= two_pi;

  const Eigen::Matrix2d v = eigenbasis_rotation(q, g);
  const Eigen::Vector2d excited = v.col(0);
  const Eigen::Vector2d ground = v.col(1);
  const Eigen::Matrix2d lower = ground * excited.transpose();  // sigma_-
  const Eigen::Matrix2d raise = lower.transpose();

  const double fq = qubit_frequency(q, g);
  const RateSet r = transition_rates(cold, hot, fq);

  const std::complex<double> im(0.0, 1.0);
  DensityMatrix2 out = -im * (h_over_hbar * rho - rho * h_over_hbar);
  auto dissipator = [&](const Eigen::Matrix2d& l, double rate) {
    const Eigen::Matrix2d ll = l.transpose() * l;
    out += rate * (l * rho * l.transpose() - 0.5 * (ll * rho + rho * ll));
  };
  dissipator(lower, r.total_down());
  dissipator(raise, r.total_up());
  return out;
}

double heat_current(const BathParams& bath, double f_q, double z) {
  const double gd = transition_rate_down(bath, f_q);
  const double gu = transition_rate_up(bath, f_q);
  return -0.5 * hbar * two_pi * f_q * ((gd + gu) * z + (gd - gu));
}

bool cooling_condition(double f_c, double f_h, double t_c, double t_h) {
  return f_h / f_c > t_h / t_c;
}

double thermal_population(double f_q, double temperature) {
  return 1.0 / (1.0 + std::exp(f_q / (kb_over_h * temperature)));
}

namespace {

// Everything the integrator needs, tabulated on the half-step grid
// (2n+1 points per period). One table serves every cycle of a config.
struct CycleTable {
  double dt = 0.0;
  long n = 0;
  std::vector<double> omega;      // rad/s
  std::vector<double> domega;     // rad/s^2
  std::vector<double> b;          // 1/s
  std::vector<double> gcd, gcu, ghd, ghu;  // 1/s
  double max_adiabaticity = 0.0;
};

CycleTable build_cycle_table(const EngineConfig& cfg) {
  cfg.qubit.validate();
  cfg.drive.validate();
  cfg.cold.validate();
  cfg.hot.validate();

  const double period = 1.0 / cfg.drive.f_drive;
  // The frequency extrema sit at the waveform endpoints, but scan a coarse
  // grid to stay robust for any parameter set.
  double f_max = 0.0;
  for (int k = 0; k < 1024; ++k)
    f_max = std::max(f_max,
                     qubit_frequency_of_t(cfg.qubit, cfg.drive, period * k / 1024.0));
  const double w_max = two_pi * f_max;

  long n = static_cast<long>(std::ceil(w_max * period / cfg.max_omega_dt));
  n = std::max<long>(n, cfg.drive.samples_per_period);
  if (n > cfg.max_steps_per_cycle)
    throw StepSizeTooCoarse("integrate_cycle: " + std::to_string(n) +
                            " steps per period exceeds the configured cap");

  CycleTable tab;
  tab.n = n;
  tab.dt = period / n;
  const long m = 2 * n + 1;
  tab.omega.resize(m);
  tab.domega.resize(m);
  tab.b.resize(m);
  tab.gcd.resize(m);
  tab.gcu.resize(m);
  tab.ghd.resize(m);
  tab.ghu.resize(m);
  for (long k = 0; k < m; ++k) {
    const double t = 0.5 * tab.dt * k;
    const GateCharge g = ng_of_t(cfg.drive, t);
    const double fq = qubit_frequency(cfg.qubit, g);
    const double dng = dng_dt(cfg.drive, t);
    const double ec = cfg.qubit.ec_over_h;
    tab.omega[k] = two_pi * fq;
    // d(f_Q)/dt = -32 ec^2 (1 - 2 ng) dng/dt / f_Q
    tab.domega[k] = two_pi * (-32.0 * ec * ec * (1.0 - 2.0 * g.ng) * dng / fq);
    tab.b[k] = bloch_drive_coefficient(cfg.qubit, cfg.drive, t);
    tab.gcd[k] = transition_rate_down(cfg.cold, fq);
    tab.gcu[k] = tab.gcd[k] * std::exp(-fq / (kb_over_h * cfg.cold.temperature));
    tab.ghd[k] = transition_rate_down(cfg.hot, fq);
    tab.ghu[k] = tab.ghd[k] * std::exp(-fq / (kb_over_h * cfg.hot.temperature));
    tab.max_adiabaticity =
        std::max(tab.max_adiabaticity, std::abs(tab.b[k]) / tab.omega[k]);
  }
  return tab;
}

// State layout: x, y, z, heat_c, heat_h, work_in.
struct AugState {
  double v[6];
};

inline void rhs_at(const CycleTable& tab, long k, const double* s, double* d) {
  const double w = tab.omega[k];
  const double b = tab.b[k];
  const double gcd = tab.gcd[k], gcu = tab.gcu[k];
  const double ghd = tab.ghd[k], ghu = tab.ghu[k];
  const double gd = gcd + ghd, gu = gcu + ghu;
  const double x = s[0], y = s[1], z = s[2];
  d[0] = -0.5 * (gd + gu) * x - w * y - b * z;
  d[1] = w * x - 0.5 * (gd + gu) * y;
  d[2] = b * x - (gd + gu) * z - (gd - gu);
  d[3] = -0.5 * hbar * w * ((gcd + gcu) * z + (gcd - gcu));
  d[4] = -0.5 * hbar * w * ((ghd + ghu) * z + (ghd - ghu));
  d[5] = 0.5 * hbar * tab.domega[k] * (1.0 + z) + 0.5 * hbar * w * b * x;
}

CycleIntegration run_cycle(const BlochState& initial, const CycleTable& tab) {
  double s[6] = {initial.x, initial.y, initial.z, 0.0, 0.0, 0.0};
  double k1[6], k2[6], k3[6], k4[6], tmp[6];
  const double dt = tab.dt;
  double max_norm = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);

  for (long i = 0; i < tab.n; ++i) {
    const long a = 2 * i, m = 2 * i + 1, e = 2 * i + 2;
    rhs_at(tab, a, s, k1);
    for (int j = 0; j < 6; ++j) tmp[j] = s[j] + 0.5 * dt * k1[j];
    rhs_at(tab, m, tmp, k2);
    for (int j = 0; j < 6; ++j) tmp[j] = s[j] + 0.5 * dt * k2[j];
    rhs_at(tab, m, tmp, k3);
    for (int j = 0; j < 6; ++j) tmp[j] = s[j] + dt * k3[j];
    rhs_at(tab, e, tmp, k4);
    for (int j = 0; j < 6; ++j)
      s[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    max_norm = std::max(
        max_norm, std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]));
  }

  CycleIntegration out;
  out.end_state = BlochState{s[0], s[1], s[2]};
  out.heat_cold = s[3];
  out.heat_hot = s[4];
  out.work_in = s[5];
  out.max_norm = max_norm;
  out.n_steps = tab.n;
  return out;
}

BlochState equilibrium_start(const CycleTable& tab) {
  const double gd = tab.gcd[0] + tab.ghd[0];
  const double gu = tab.gcu[0] + tab.ghu[0];
  return BlochState{0.0, 0.0, -(gd - gu) / (gd + gu)};
}

CycleResult steady_cycle_from_table(const EngineConfig& cfg,
                                    const CycleTable& tab) {
  BlochState state = equilibrium_start(tab);
  CycleIntegration last;
  int cycle = 0;
  bool converged = false;
  for (; cycle < cfg.max_cycles; ++cycle) {
    last = run_cycle(state, tab);
    const double dx = last.end_state.x - state.x;
    const double dy = last.end_state.y - state.y;
    const double dz = last.end_state.z - state.z;
    state = last.end_state;
    if (std::sqrt(dx * dx + dy * dy + dz * dz) < cfg.steady_tol) {
      converged = true;
      ++cycle;
      break;
    }
  }

  CycleResult res;
  res.f_drive = cfg.drive.f_drive;
  res.q_dot_cold_avg = last.heat_cold * cfg.drive.f_drive;
  res.q_dot_hot_avg = last.heat_hot * cfg.drive.f_drive;
  res.work_avg = last.work_in * cfg.drive.f_drive;
  res.entropy_rate = -(res.q_dot_cold_avg / cfg.cold.temperature +
                       res.q_dot_hot_avg / cfg.hot.temperature);
  res.max_adiabaticity = tab.max_adiabaticity;
  res.cycles_to_converge = cycle;
  res.converged = converged;
  return res;
}

}  // namespace

CycleIntegration integrate_cycle(const BlochState& initial,
                                 const EngineConfig& config) {
  return run_cycle(initial, build_cycle_table(config));
}

Trajectory integrate_trajectory(const BlochState& initial,
                                const EngineConfig& config, int cycles,
                                int samples_per_cycle) {
  const CycleTable tab = build_cycle_table(config);
  const long stride = std::max<long>(1, tab.n / samples_per_cycle);

  Trajectory traj;
  double s[6] = {initial.x, initial.y, initial.z, 0.0, 0.0, 0.0};
  double k1[6], k2[6], k3[6], k4[6], tmp[6];
  const double dt = tab.dt;
  for (int c = 0; c < cycles; ++c) {
    for (long i = 0; i < tab.n; ++i) {
      if (i % stride == 0) {
        traj.t.push_back((c + double(i) / tab.n) / config.drive.f_drive);
        traj.state.push_back(BlochState{s[0], s[1], s[2]});
      }
      const long a = 2 * i, m = 2 * i + 1, e = 2 * i + 2;
      rhs_at(tab, a, s, k1);
      for (int j = 0; j < 6; ++j) tmp[j] = s[j] + 0.5 * dt * k1[j];
      rhs_at(tab, m, tmp, k2);
      for (int j = 0; j < 6; ++j) tmp[j] = s[j] + 0.5 * dt * k2[j];
      rhs_at(tab, m, tmp, k3);
      for (int j = 0; j < 6; ++j) tmp[j] = s[j] + dt * k3[j];
      rhs_at(tab, e, tmp, k4);
      for (int j = 0; j < 6; ++j)
        s[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
  }
  traj.t.push_back(cycles / config.drive.f_drive);
  traj.state.push_back(BlochState{s[0], s[1], s[2]});
  return traj;
}

CycleResult find_steady_cycle(const EngineConfig& config) {
  return steady_cycle_from_table(config, build_cycle_table(config));
}

std::vector<CycleResult> sweep_drive_frequency(const std::vector<double>& f_grid,
                                               const EngineConfig& config,
                                               int threads) {
  std::vector<CycleResult> results(f_grid.size());
  const int nthreads =
      std::clamp<int>(threads, 1, static_cast<int>(f_grid.size()));

  auto worker = [&](int first, int step) {
    for (size_t i = first; i < f_grid.size(); i += step) {
      EngineConfig point = config;
      point.drive.f_drive = f_grid[i];
      try {
        results[i] = find_steady_cycle(point);
      } catch (const Error&) {
        results[i] = CycleResult{};
        results[i].f_drive = f_grid[i];
        results[i].converged = false;
      }
    }
  };

  if (nthreads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t, nthreads);
    for (auto& th : pool) th.join();
  }
  return results;
}

}  // namespace cpb
