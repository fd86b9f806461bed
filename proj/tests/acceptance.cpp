// Acceptance gates for the Cooper-pair-box refrigerator suite. Each criterion
// prints exactly one PASS/FAIL line; the exit code is nonzero when any gate
// fails. The checks are ordered from pure algebra to full steady-state sweeps.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cpb/cli_io.hpp"
#include "cpb/constants.hpp"
#include "cpb/drive_protocol.hpp"
#include "cpb/experiments.hpp"
#include "cpb/microwave_filter.hpp"
#include "cpb/otto_engine.hpp"
#include "cpb/qubit_model.hpp"
#include "cpb/spectroscopy.hpp"

using namespace cpb;
using constants::hbar;
using constants::kb_over_h;
using constants::two_pi;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i)
    out.push_back(lo * std::pow(hi / lo, (double)i / (n - 1)));
  return out;
}

// ---------------------------------------------------------------------------
// 1. Two-level spectrum against the 6-charge-state diagonalization.
void criterion_1() {
  const QubitParams q;
  bool pass = qubit_frequency(q, GateCharge{0.5}) == 3.5e9;
  double worst = 0.0;
  for (int k = 0; k <= 80; ++k) {
    const double ng = 0.3 + 0.4 * k / 80.0;
    const Spectrum s = charge_spectrum(q, GateCharge{ng}, 2);
    const double f2 = qubit_frequency(q, GateCharge{ng});
    worst = std::max(worst, std::abs(s.eigenvalues[1] - f2) / f2);
  }
  pass = pass && worst <= 0.02;
  report(1, pass,
         fmt("f_Q(0.5) = 3.500 GHz exact; 6-state vs two-level worst "
             "deviation %.3f%% over |ng-0.5| <= 0.2",
             100 * worst));
}

// ---------------------------------------------------------------------------
// 2. Dressed-state minimum gaps at both resonator crossings.
double min_gap(const QubitParams& q, const ResonatorParams& rc,
               const ResonatorParams& rh, double ng_lo, double ng_hi,
               int level) {
  double gap = 1e18;
  for (int k = 0; k < 201; ++k) {
    const double ng = ng_lo + (ng_hi - ng_lo) * k / 200.0;
    const EigenSystem es =
        eigensolve_hermitian(build_full_hamiltonian(q, rc, rh, GateCharge{ng}, 0.0));
    gap = std::min(gap, es.eigenvalues(level + 1) - es.eigenvalues(level));
  }
  return gap;
}

void criterion_2() {
  const QubitParams q;
  const ResonatorParams rc{4.718e9, 1e4, 140e6, 5, ResonatorRole::cold};
  const ResonatorParams rh{8.001e9, 1e4, 250e6, 5, ResonatorRole::hot};
  // One-excitation manifold: the cold crossing splits levels 1/2, the hot
  // crossing (with the cold photon below it) splits levels 2/3.
  const double gap_c = min_gap(q, rc, rh, 0.435, 0.449, 1);
  const double gap_h = min_gap(q, rc, rh, 0.361, 0.375, 2);
  const double want_c = 2.0 * 140e6 * (3.5e9 / 4.718e9);
  const double want_h = 2.0 * 250e6 * (3.5e9 / 8.001e9);
  const double err_c = std::abs(gap_c - want_c) / want_c;
  const double err_h = std::abs(gap_h - want_h) / want_h;
  report(2, err_c <= 0.03 && err_h <= 0.03,
         fmt("min gaps %.2f / %.2f MHz vs 2 g0 sin(theta) = %.2f / %.2f MHz "
             "(err %.2f%% / %.2f%%)",
             gap_c / 1e6, gap_h / 1e6, want_c / 1e6, want_h / 1e6, 100 * err_c,
             100 * err_h));
}

// ---------------------------------------------------------------------------
// 3. Effective couplings from the dispersive pull at the degeneracy point.
void criterion_3() {
  // Measured dispersive pulls at the degeneracy point and the detunings from
  // the 3.5 GHz qubit transition; g = sqrt(chi Delta) must return the quoted
  // effective couplings.
  const double g_h = effective_coupling_from_shift(3.47e6, 8.001e9 - 3.5e9);
  const double g_c = effective_coupling_from_shift(4.74e6, 4.718e9 - 3.5e9);
  const double err_h = std::abs(g_h - 125e6) / 125e6;
  const double err_c = std::abs(g_c - 76e6) / 76e6;
  report(3, err_h <= 0.005 && err_c <= 0.005,
         fmt("recovered g_h = %.4f MHz, g_c = %.4f MHz (err %.3f%% / %.3f%%)",
             g_h / 1e6, g_c / 1e6, 100 * err_h, 100 * err_c));
}

// ---------------------------------------------------------------------------
// 4. Two-tone pipeline: synthetic power broadening -> zero-power rate.
void criterion_4() {
  RunConfig cfg = default_config();
  cfg.experiment = Experiment::two_tone;  // defaults: 5 powers, 1% noise, seed 1
  const ResultTable t = two_tone_table(cfg);
  const double fitted = t.rows.front()[t.column_index("gamma2_fit_over_2pi")];
  const double err = std::abs(fitted - 24e6) / 24e6;
  report(4, err <= 0.05,
         fmt("extrapolated Gamma_2/2pi = %.3f MHz vs 24 MHz (err %.2f%%)",
             fitted / 1e6, 100 * err));
}

// ---------------------------------------------------------------------------
// 5 + 6. Steady-state cooling sweep plus per-cycle thermodynamic audits.
std::vector<CycleResult> sweep_results;

void criterion_5() {
  const RunConfig cfg = default_config();
  const std::vector<double> grid = logspace(1e6, 2.3e9, 60);
  sweep_results = sweep_drive_frequency(grid, cfg.engine(), 1);

  double peak = -1e18;
  int peak_idx = -1;
  for (size_t i = 0; i < sweep_results.size(); ++i) {
    if (!sweep_results[i].converged) continue;
    if (sweep_results[i].q_dot_cold_avg > peak) {
      peak = sweep_results[i].q_dot_cold_avg;
      peak_idx = (int)i;
    }
  }
  const bool cooling_band = peak > 0.0;
  const bool peak_scale = peak >= 1.5e-16 / 3.0 && peak <= 1.5e-16 * 3.0;

  EngineConfig poisoned = cfg.engine();
  poisoned.cold.g_eff_scale = 0.61;
  poisoned.hot.g_eff_scale = 0.66;
  const auto poisoned_results = sweep_drive_frequency(grid, poisoned, 1);
  double peak_p = -1e18;
  for (const auto& r : poisoned_results)
    if (r.converged) peak_p = std::max(peak_p, r.q_dot_cold_avg);
  const double ratio = peak_p / peak;
  const bool ratio_ok = ratio >= 0.30 && ratio <= 0.50;

  // The global maximum sits on a coherent oscillation crest at the top of the
  // sweep, so scan the derivative from a quarter of the peak frequency up to
  // capture the dips superimposed on the high-frequency shoulder.
  int sign_changes = 0;
  double prev_diff = 0.0;
  bool have_prev = false;
  for (size_t i = 0; i + 1 < sweep_results.size(); ++i) {
    if (sweep_results[i].f_drive < sweep_results[peak_idx].f_drive / 4.0)
      continue;
    const double diff =
        sweep_results[i + 1].q_dot_cold_avg - sweep_results[i].q_dot_cold_avg;
    if (have_prev && diff * prev_diff < 0.0) ++sign_changes;
    prev_diff = diff;
    have_prev = true;
  }
  const bool oscillations = sign_changes >= 2;

  report(5, cooling_band && peak_scale && ratio_ok && oscillations,
         fmt("peak cooling %.1f aW (gate: 50..450 aW), poisoned ratio %.3f "
             "(gate: 0.40 +/- 0.10), %d derivative sign changes above peak",
             peak * 1e18, ratio, sign_changes));
}

void criterion_6() {
  double worst_first_law = 0.0;
  double worst_second_law = -1e18;
  int audited = 0;
  const RunConfig cfg = default_config();
  for (const auto& r : sweep_results) {
    if (!r.converged) continue;
    ++audited;
    const double scale = std::max({std::abs(r.q_dot_cold_avg),
                                   std::abs(r.q_dot_hot_avg),
                                   std::abs(r.work_avg)});
    worst_first_law = std::max(
        worst_first_law,
        std::abs(r.q_dot_cold_avg + r.q_dot_hot_avg + r.work_avg) / scale);
    const double slack =
        1e-3 * (std::abs(r.q_dot_cold_avg) / cfg.t_cold +
                std::abs(r.q_dot_hot_avg) / cfg.t_hot);
    // entropy_rate = -(Qc/Tc + Qh/Th) must be non-negative up to slack.
    worst_second_law = std::max(worst_second_law, -r.entropy_rate - slack);
  }

  // Detailed balance of the rate model itself.
  const EngineConfig e = cfg.engine();
  double worst_db = 0.0;
  for (double f : {3.6e9, 4.718e9, 6.0e9, 8.001e9, 1.2e10})
    for (const BathParams* b : {&e.cold, &e.hot}) {
      const double want = std::exp(-f / (kb_over_h * b->temperature));
      const double got = transition_rate_up(*b, f) / transition_rate_down(*b, f);
      worst_db = std::max(worst_db, std::abs(got - want) / want);
    }

  report(6,
         audited > 0 && worst_first_law <= 1e-3 && worst_second_law <= 0.0 &&
             worst_db <= 1e-12,
         fmt("%d cycles audited: first-law residual <= %.2e, entropy "
             "production non-negative, detailed balance to %.1e",
             audited, worst_first_law, worst_db));
}

// ---------------------------------------------------------------------------
// 7. Rotating-frame Bloch vs lab-frame Lindblad density matrix.
void criterion_7() {
  const RunConfig run = default_config();
  const EngineConfig cfg = run.engine();
  const QubitParams& q = cfg.qubit;
  const DriveProtocol& p = cfg.drive;

  const double period = 1.0 / p.f_drive;
  const double w_max = two_pi * 8.001e9;
  const long n = (long)std::ceil(w_max * period / 0.02);
  const double dt = period / n;

  auto add = [](const BlochState& a, const BlochState& b, double s) {
    return BlochState{a.x + s * b.x, a.y + s * b.y, a.z + s * b.z};
  };
  auto bloch_step = [&](BlochState s, double t) {
    const BlochState k1 = bloch_rhs(s, t, q, p, cfg.cold, cfg.hot);
    const BlochState k2 =
        bloch_rhs(add(s, k1, 0.5 * dt), t + 0.5 * dt, q, p, cfg.cold, cfg.hot);
    const BlochState k3 =
        bloch_rhs(add(s, k2, 0.5 * dt), t + 0.5 * dt, q, p, cfg.cold, cfg.hot);
    const BlochState k4 = bloch_rhs(add(s, k3, dt), t + dt, q, p, cfg.cold, cfg.hot);
    return BlochState{s.x + dt / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x),
                      s.y + dt / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y),
                      s.z + dt / 6 * (k1.z + 2 * k2.z + 2 * k3.z + k4.z)};
  };
  auto lindblad_step = [&](const DensityMatrix2& rho, double t) {
    const DensityMatrix2 k1 = lindblad_rhs(rho, t, q, p, cfg.cold, cfg.hot);
    const DensityMatrix2 k2 =
        lindblad_rhs(rho + 0.5 * dt * k1, t + 0.5 * dt, q, p, cfg.cold, cfg.hot);
    const DensityMatrix2 k3 =
        lindblad_rhs(rho + 0.5 * dt * k2, t + 0.5 * dt, q, p, cfg.cold, cfg.hot);
    const DensityMatrix2 k4 =
        lindblad_rhs(rho + dt * k3, t + dt, q, p, cfg.cold, cfg.hot);
    return (rho + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).eval();
  };

  // Start in the instantaneous ground state at t = 0.
  BlochState s{0.0, 0.0, -1.0};
  Eigen::Matrix2d v0 = eigenbasis_rotation(q, ng_of_t(p, 0.0));
  DensityMatrix2 rho = DensityMatrix2::Zero();
  rho += (v0.col(1) * v0.col(1).transpose()).cast<std::complex<double>>();

  double worst = 0.0;
  double t = 0.0;
  for (int cycle = 0; cycle < 10; ++cycle) {
    for (long i = 0; i < n; ++i) {
      s = bloch_step(s, t);
      rho = lindblad_step(rho, t);
      t = period * (double(cycle) + double(i + 1) / n);
      if ((i + 1) % 997 == 0 || i + 1 == n) {
        const Eigen::Matrix2d v = eigenbasis_rotation(q, ng_of_t(p, t));
        const DensityMatrix2 in_eigen =
            v.cast<std::complex<double>>().transpose() * rho *
            v.cast<std::complex<double>>();
        const double z_lab = std::real(in_eigen(0, 0) - in_eigen(1, 1));
        worst = std::max(worst, std::abs(z_lab - s.z));
      }
    }
  }
  report(7, worst <= 1e-6,
         fmt("max |z_Bloch - z_Lindblad| = %.2e over 10 cycles at 10 MHz",
             worst));
}

// ---------------------------------------------------------------------------
// 8. Quasistatic limit against the coherence-free rate-equation oracle.
void criterion_8() {
  RunConfig run = default_config();
  run.t_cold = 0.25;
  run.t_hot = 0.35;
  run.q_bath_cold = 600.0;  // sharp filters make each endpoint single-bath
  run.q_bath_hot = 600.0;
  EngineConfig base = run.engine();
  // Weak couplings keep the endpoint rates near 1e6 1/s so the three-decade
  // frequency scan brackets the quasistatic crossover.
  base.cold.resonator.g0_over_2pi = 1.0e5;
  base.hot.resonator.g0_over_2pi = 1.645e5;

  // Oracle: endpoint equilibria of dp/dt = G_up (1 - p) - G_down p; the ideal
  // per-cycle cold heat is hbar w_c (p_eq(f_c) - p_eq(f_h)).
  auto p_eq = [&](double f) {
    const RateSet r = transition_rates(base.cold, base.hot, f);
    return r.total_up() / (r.total_up() + r.total_down());
  };
  const double ref =
      hbar * two_pi * 4.718e9 * (p_eq(4.718e9) - p_eq(8.001e9));

  const double f_list[3] = {1e6, 1e5, 1e4};
  const double omega_dt[3] = {0.1, 0.5, 1.0};
  double err[3];
  for (int i = 0; i < 3; ++i) {
    EngineConfig cfg = base;
    cfg.drive.f_drive = f_list[i];
    cfg.max_omega_dt = omega_dt[i];
    const CycleResult r = find_steady_cycle(cfg);
    const double per_cycle = r.q_dot_cold_avg / f_list[i];
    err[i] = per_cycle / ref - 1.0;
  }
  const bool monotone =
      std::abs(err[1]) < std::abs(err[0]) && std::abs(err[2]) < std::abs(err[1]);
  report(8, monotone && std::abs(err[2]) <= 0.05,
         fmt("per-cycle cold heat vs hbar w_c dp: errors %+.1f%% -> %+.1f%% "
             "-> %+.2f%% across f_drive = 1 MHz, 100 kHz, 10 kHz",
             100 * err[0], 100 * err[1], 100 * err[2]));
}

// ---------------------------------------------------------------------------
// 9. Gate-line LCL low-pass filter.
void criterion_9() {
  const LCLFilter filt;  // 5.9 nH, 1.7 pF, 50 ohm
  const double cutoff = lcl_cutoff(filt);
  const double db = 20.0 * std::log10(std::abs(lcl_s21(4.718e9, filt)));
  double worst = 0.0;
  for (int i = 0; i <= 500; ++i) {
    const double f = 0.1e9 + i * (14e9 - 0.1e9) / 500;
    const Complex a = lcl_s21(f, filt);
    const Complex b = lcl_s21_cascade(f, filt);
    worst = std::max(worst, std::abs(a - b) / std::abs(b));
  }
  report(9,
         std::abs(cutoff - 2.25e9) <= 0.01e9 && std::abs(db + 22.4) <= 0.2 &&
             worst <= 1e-12,
         fmt("cutoff %.4f GHz, |S21|(4.718 GHz) = %.2f dB, closed form vs "
             "cascade to %.1e",
             cutoff / 1e9, db, worst));
}

// ---------------------------------------------------------------------------
// 10. Byte-identical CSV outputs for repeated runs with fixed config + seed.
void criterion_10() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "cpb_acceptance";
  fs::create_directories(dir);

  bool pass = true;
  std::string detail;
  for (Experiment e : {Experiment::two_tone, Experiment::filter}) {
    RunConfig cfg = default_config();
    cfg.experiment = e;
    cfg.output_dir = dir.string();
    const ExperimentOutput first = run_experiment(cfg);
    std::ifstream in1(first.files.front(), std::ios::binary);
    std::stringstream buf1;
    buf1 << in1.rdbuf();
    const ExperimentOutput second = run_experiment(cfg);
    std::ifstream in2(second.files.front(), std::ios::binary);
    std::stringstream buf2;
    buf2 << in2.rdbuf();
    const bool same =
        first.files == second.files && buf1.str() == buf2.str() &&
        !buf1.str().empty();
    pass = pass && same;
    detail += to_string(e) + (same ? " ok; " : " MISMATCH; ");
  }
  report(10, pass, "repeated runs byte-identical: " + detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures == 0)
    std::printf("acceptance: all 10 criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
