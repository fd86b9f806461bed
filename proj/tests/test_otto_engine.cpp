#include <doctest.h>

#include <cmath>

#include "cpb/constants.hpp"
#include "cpb/otto_engine.hpp"

using namespace cpb;
using constants::kb_over_h;

namespace {

EngineConfig paper_engine(double f_drive = 10e6) {
  EngineConfig cfg;
  cfg.drive.f_drive = f_drive;
  cfg.drive.a = 2.0;
  cfg.drive.ng_c =
      gate_charge_for_frequency(cfg.qubit, 4.718e9, NgBranch::below_half).ng;
  cfg.drive.ng_h =
      gate_charge_for_frequency(cfg.qubit, 8.001e9, NgBranch::below_half).ng;
  cfg.cold = BathParams{0.3, {4.718e9, 2.0, 76e6, 5, ResonatorRole::cold}, 1.0};
  cfg.hot = BathParams{0.3, {8.001e9, 2.0, 125e6, 5, ResonatorRole::hot}, 1.0};
  return cfg;
}

}  // namespace

TEST_CASE("transition rates: filter, detailed balance, coupling scaling") {
  const EngineConfig cfg = paper_engine();

  // At resonance the Lorentzian factor is exactly one, so the rate is
  // linear in the quality factor there.
  BathParams wide = cfg.cold;
  wide.resonator.q_total = 50.0;
  const double at_res = transition_rate_down(cfg.cold, 4.718e9);
  CHECK(transition_rate_down(wide, 4.718e9) ==
        doctest::Approx(25.0 * at_res).epsilon(1e-12));
  // Off resonance the filter suppresses the rate.
  CHECK(transition_rate_down(cfg.cold, 8.001e9) < at_res);
  CHECK(transition_rate_down(wide, 8.001e9) <
        transition_rate_down(cfg.cold, 8.001e9));

  // Boltzmann ratio at the cold operating point, with k_B/h = 2.0836619e10.
  const double ratio = transition_rate_up(cfg.cold, 4.718e9) / at_res;
  CHECK(ratio == doctest::Approx(0.470110).epsilon(1e-4));
  CHECK(ratio ==
        doctest::Approx(std::exp(-4.718e9 / (kb_over_h * 0.3))).epsilon(1e-13));

  // T -> 0: only spontaneous emission remains.
  BathParams frozen = cfg.cold;
  frozen.temperature = 1e-6;
  const double spont = transition_rate_down(frozen, 4.718e9);
  CHECK(transition_rate_up(frozen, 4.718e9) == 0.0);
  CHECK(at_res / spont ==
        doctest::Approx(1.0 / (1.0 - std::exp(-4.718e9 / (kb_over_h * 0.3))))
            .epsilon(1e-12));

  // Rates are quadratic in the effective coupling scale.
  BathParams scaled = cfg.cold;
  scaled.g_eff_scale = 0.5;
  CHECK(transition_rate_down(scaled, 4.718e9) ==
        doctest::Approx(0.25 * at_res).epsilon(1e-12));
}

TEST_CASE("rate set combines both baths") {
  const EngineConfig cfg = paper_engine();
  const RateSet r = transition_rates(cfg.cold, cfg.hot, 6.0e9);
  CHECK(r.gamma_c_down == transition_rate_down(cfg.cold, 6.0e9));
  CHECK(r.gamma_h_down == transition_rate_down(cfg.hot, 6.0e9));
  CHECK(r.total_down() == r.gamma_c_down + r.gamma_h_down);
  CHECK(r.gamma_c_up / r.gamma_c_down ==
        doctest::Approx(std::exp(-6.0e9 / (kb_over_h * 0.3))).epsilon(1e-13));
}

TEST_CASE("heat current sign structure") {
  const EngineConfig cfg = paper_engine();
  const double fq = 4.718e9;
  const double gd = transition_rate_down(cfg.cold, fq);
  const double gu = transition_rate_up(cfg.cold, fq);
  // Ground state absorbs from the bath.
  CHECK(heat_current(cfg.cold, fq, -1.0) ==
        doctest::Approx(constants::hbar * constants::two_pi * fq * gu));
  // At the bath's own equilibrium the current vanishes.
  const double z_eq = -(gd - gu) / (gd + gu);
  CHECK(heat_current(cfg.cold, fq, z_eq) ==
        doctest::Approx(0.0).scale(constants::hbar * constants::two_pi * fq * gd));
  // Excited state dumps heat into the bath.
  CHECK(heat_current(cfg.cold, fq, 1.0) < 0.0);
}

TEST_CASE("static Bloch dynamics relax to the Gibbs fixed point") {
  const EngineConfig cfg = paper_engine();
  const double t0 = 0.0;  // hot endpoint, frequency static over a short window
  const double fq = qubit_frequency_of_t(cfg.qubit, cfg.drive, t0);
  const RateSet r = transition_rates(cfg.cold, cfg.hot, fq);
  const double z_eq = -(r.total_down() - r.total_up()) /
                      (r.total_down() + r.total_up());
  BlochState fixed{0.0, 0.0, z_eq};
  const BlochState d = bloch_rhs(fixed, t0, cfg.qubit, cfg.drive, cfg.cold, cfg.hot);
  // dNg/dt = 0 at the endpoint, so the fixed point is exact there.
  CHECK(std::abs(d.x) < 1e-9);
  CHECK(std::abs(d.y) < 1e-9);
  CHECK(std::abs(d.z) < 1e-6 * (r.total_down() + r.total_up()));

  // Transverse components decay at half the longitudinal rate.
  BlochState tilted{0.1, 0.0, z_eq};
  const BlochState dt_ =
      bloch_rhs(tilted, t0, cfg.qubit, cfg.drive, cfg.cold, cfg.hot);
  CHECK(dt_.x == doctest::Approx(-0.5 * (r.total_down() + r.total_up()) * 0.1)
                     .epsilon(1e-9));
  CHECK(dt_.y == doctest::Approx(constants::two_pi * fq * 0.1).epsilon(1e-12));
}

TEST_CASE("lindblad oracle: trace-free, Hermiticity-preserving generator") {
  const EngineConfig cfg = paper_engine();
  DensityMatrix2 rho;
  rho << std::complex<double>(0.7, 0.0), std::complex<double>(0.1, 0.05),
      std::complex<double>(0.1, -0.05), std::complex<double>(0.3, 0.0);
  const DensityMatrix2 d =
      lindblad_rhs(rho, 1.3e-8, cfg.qubit, cfg.drive, cfg.cold, cfg.hot);
  CHECK(std::abs(d.trace()) < 1e-12 * d.norm());
  CHECK((d - d.adjoint()).norm() < 1e-12 * d.norm());
}

TEST_CASE("eigenbasis rotation diagonalizes the two-level Hamiltonian") {
  const QubitParams q;
  for (double ng : {0.36, 0.44, 0.5, 0.58}) {
    const GateCharge g{ng};
    const double eps = 4.0 * q.ec_over_h * (1.0 - 2.0 * ng);
    Eigen::Matrix2d h;
    h << -0.5 * eps, -0.5 * q.ej_over_h, -0.5 * q.ej_over_h, 0.5 * eps;
    const Eigen::Matrix2d v = eigenbasis_rotation(q, g);
    const Eigen::Matrix2d rotated = v.transpose() * h * v;
    const double fq = qubit_frequency(q, g);
    CHECK(rotated(0, 0) == doctest::Approx(0.5 * fq).epsilon(1e-12));
    CHECK(rotated(1, 1) == doctest::Approx(-0.5 * fq).epsilon(1e-12));
    CHECK(std::abs(rotated(0, 1)) < 1e-6);
    CHECK((v.transpose() * v - Eigen::Matrix2d::Identity()).norm() < 1e-14);
  }
}

TEST_CASE("integrate_cycle: Richardson self-consistency and norm bound") {
  EngineConfig cfg = paper_engine(10e6);
  const CycleResult steady = find_steady_cycle(cfg);
  REQUIRE(steady.converged);

  BlochState start{0.0, 0.0, -0.5};
  const CycleIntegration coarse = integrate_cycle(start, cfg);
  EngineConfig fine_cfg = cfg;
  fine_cfg.max_omega_dt = 0.05;
  const CycleIntegration fine = integrate_cycle(start, fine_cfg);
  CHECK(std::abs(coarse.heat_cold - fine.heat_cold) <
        1e-4 * std::abs(fine.heat_cold));
  CHECK(coarse.max_norm <= 1.0 + 1e-9);
  CHECK(fine.n_steps > coarse.n_steps);
}

TEST_CASE("steady cycle is independent of the initial state") {
  EngineConfig cfg = paper_engine(2e7);
  Trajectory north = integrate_trajectory(BlochState{0, 0, 0.999}, cfg, 400, 1);
  Trajectory south = integrate_trajectory(BlochState{0, 0, -0.999}, cfg, 400, 1);
  const BlochState& a = north.state.back();
  const BlochState& b = south.state.back();
  CHECK(std::abs(a.x - b.x) < 1e-8);
  CHECK(std::abs(a.y - b.y) < 1e-8);
  CHECK(std::abs(a.z - b.z) < 1e-8);
}

TEST_CASE("zero-amplitude drive exchanges nothing in steady state") {
  EngineConfig cfg = paper_engine(10e6);
  // Collapse the ramp to (almost) nothing: endpoints one ulp apart since
  // exactly equal endpoints are rejected.
  cfg.drive.ng_c = 0.40;
  cfg.drive.ng_h = std::nextafter(0.40, 1.0);
  const CycleResult r = find_steady_cycle(cfg);
  REQUIRE(r.converged);
  const double scale =
      constants::hbar * constants::two_pi * 4.718e9 *
      transition_rate_down(cfg.cold, qubit_frequency(cfg.qubit, GateCharge{0.4}));
  CHECK(std::abs(r.q_dot_cold_avg) < 1e-8 * scale);
  CHECK(std::abs(r.q_dot_hot_avg) < 1e-8 * scale);
  CHECK(std::abs(r.work_avg) < 1e-8 * scale);
}

TEST_CASE("step cap raises StepSizeTooCoarse") {
  EngineConfig cfg = paper_engine(1e6);
  cfg.max_steps_per_cycle = 1000;
  CHECK_THROWS_AS(find_steady_cycle(cfg), StepSizeTooCoarse);
}

TEST_CASE("bath validation") {
  BathParams b{0.3, {4.718e9, 2.0, 76e6, 5, ResonatorRole::cold}, 1.0};
  CHECK_NOTHROW(b.validate());
  b.g_eff_scale = 1.5;
  CHECK_THROWS_AS(b.validate(), ValidationError);
  b.g_eff_scale = 1.0;
  b.temperature = 0.0;
  CHECK_THROWS_AS(b.validate(), ValidationError);
}

TEST_CASE("sweep flags per-point failures and keeps going") {
  EngineConfig cfg = paper_engine();
  cfg.max_steps_per_cycle = 200000;  // fails below ~2.5 GHz drive
  const std::vector<double> grid{1e6, 1e9};
  const auto results = sweep_drive_frequency(grid, cfg, 1);
  REQUIRE(results.size() == 2);
  CHECK_FALSE(results[0].converged);
  CHECK(results[1].converged);
  CHECK(results[0].f_drive == 1e6);
}

TEST_CASE("cooling condition and thermal population") {
  CHECK(cooling_condition(4.718e9, 8.001e9, 0.3, 0.3));
  CHECK_FALSE(cooling_condition(4.718e9, 8.001e9, 0.3, 0.6));
  CHECK_FALSE(cooling_condition(1.0, 2.0, 1.0, 2.0));
  CHECK(thermal_population(4.718e9, 0.3) ==
        doctest::Approx(1.0 / (1.0 + std::exp(4.718e9 / (kb_over_h * 0.3))))
            .epsilon(1e-14));
  CHECK(thermal_population(4.718e9, 1e12) == doctest::Approx(0.5).epsilon(1e-6));
}
