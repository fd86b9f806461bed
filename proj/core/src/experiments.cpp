#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "cpb/constants.hpp"
#include "cpb/experiments.hpp"
#include "cpb/spectroscopy.hpp"

namespace cpb {

namespace {

constexpr const char* kVersion = "cpb 0.1.0";

std::string provenance(const RunConfig& cfg) {
  return std::string(kVersion) + " config_hash=" + config_hash(cfg);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (int i = 0; i < n; ++i)
    v[i] = std::pow(10.0, llo + (lhi - llo) * i / (n - 1));
  return v;
}

}  // namespace

ResultTable spectrum_table(const RunConfig& cfg) {
  ResultTable t;
  t.provenance = provenance(cfg);
  t.columns.push_back("ng");
  t.units.push_back("1");
  for (int k = 0; k < cfg.spectrum.levels; ++k) {
    t.columns.push_back("e" + std::to_string(k));
    t.units.push_back("Hz");
  }
  for (double ng :
       linspace(cfg.spectrum.ng_min, cfg.spectrum.ng_max, cfg.spectrum.ng_points)) {
    const Spectrum s =
        charge_spectrum(cfg.qubit, GateCharge{ng}, cfg.spectrum.levels);
    std::vector<double> row{ng};
    row.insert(row.end(), s.eigenvalues.begin(), s.eigenvalues.end());
    t.add_row(std::move(row));
  }
  return t;
}

ResultTable one_tone_table(const RunConfig& cfg) {
  const auto ng_grid =
      linspace(cfg.one_tone.ng_min, cfg.one_tone.ng_max, cfg.one_tone.ng_points);
  std::vector<double> f_grid;
  const int half = cfg.one_tone.f_points / 2;
  for (double f : linspace(cfg.res_cold.f_r - cfg.one_tone.f_margin,
                           cfg.res_cold.f_r + cfg.one_tone.f_margin, half))
    f_grid.push_back(f);
  for (double f : linspace(cfg.res_hot.f_r - cfg.one_tone.f_margin,
                           cfg.res_hot.f_r + cfg.one_tone.f_margin,
                           cfg.one_tone.f_points - half))
    f_grid.push_back(f);

  NotchResonance notch_c{cfg.res_cold.f_r, cfg.one_tone.q_loaded,
                         cfg.one_tone.q_coupling};
  NotchResonance notch_h{cfg.res_hot.f_r, cfg.one_tone.q_loaded,
                         cfg.one_tone.q_coupling};
  Eigen::MatrixXd map = one_tone_map(cfg.qubit, cfg.res_cold, cfg.res_hot,
                                     notch_c, notch_h, ng_grid, f_grid);
  if (cfg.one_tone.p_even < 1.0)
    map = parity_mix(map, odd_parity_map(map, ng_grid), cfg.one_tone.p_even);

  ResultTable t;
  t.provenance = provenance(cfg);
  t.columns = {"ng", "f", "s21"};
  t.units = {"1", "Hz", "1"};
  for (size_t j = 0; j < ng_grid.size(); ++j)
    for (size_t i = 0; i < f_grid.size(); ++i)
      t.add_row({ng_grid[j], f_grid[i], map(i, j)});
  return t;
}

ResultTable two_tone_table(const RunConfig& cfg) {
  const TwoToneBlock& tt = cfg.two_tone;
  DecoherenceRates rates{constants::two_pi * tt.gamma1_over_2pi,
                         constants::two_pi * tt.gamma2_over_2pi};
  const double g_h_rad = constants::two_pi * cfg.g_eff_hot;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> noise(-1.0, 1.0);

  std::vector<double> powers, widths_sq;
  ResultTable t;
  t.provenance = provenance(cfg);
  t.columns = {"p_pump", "delta_f", "delta_f_sq"};
  t.units = {"W", "Hz", "Hz^2"};
  for (int i = 1; i <= tt.n_powers; ++i) {
    const double p = tt.p_max * i / tt.n_powers;
    const double n_p = tt.pump_photon_scale * p;
    const double df = linewidth_model(n_p, g_h_rad, rates);
    const double df_sq = df * df * (1.0 + tt.noise_frac * noise(rng));
    powers.push_back(p);
    widths_sq.push_back(df_sq);
    t.add_row({p, std::sqrt(df_sq), df_sq});
  }
  const double gamma2 = extrapolate_gamma2(powers, widths_sq);
  t.columns.push_back("gamma2_fit_over_2pi");
  t.units.push_back("Hz");
  for (auto& row : t.rows) row.push_back(gamma2 / constants::two_pi);
  return t;
}

ResultTable otto_sweep_table(const RunConfig& cfg) {
  const auto grid =
      logspace(cfg.otto_sweep.f_min, cfg.otto_sweep.f_max, cfg.otto_sweep.points);
  const auto results = sweep_drive_frequency(grid, cfg.engine(), cfg.threads);

  ResultTable t;
  t.provenance = provenance(cfg);
  t.columns = {"f_drive",      "q_dot_cold", "q_dot_hot", "work",
               "entropy_rate", "max_adiabaticity", "cycles", "converged"};
  t.units = {"Hz", "W", "W", "W", "W/K", "1", "1", "1"};
  for (const auto& r : results)
    t.add_row({r.f_drive, r.q_dot_cold_avg, r.q_dot_hot_avg, r.work_avg,
               r.entropy_rate, r.max_adiabaticity, (double)r.cycles_to_converge,
               r.converged ? 1.0 : 0.0});
  return t;
}

ResultTable filter_table(const RunConfig& cfg) {
  ResultTable t;
  t.provenance = provenance(cfg);
  t.columns = {"f", "s21_abs", "s21_db"};
  t.units = {"Hz", "1", "dB"};
  for (double f : linspace(cfg.filter.f_min, cfg.filter.f_max, cfg.filter.points)) {
    const double mag = std::abs(lcl_s21(f, cfg.filter.filter));
    t.add_row({f, mag, 20.0 * std::log10(mag)});
  }
  return t;
}

ExperimentOutput run_experiment(const RunConfig& cfg) {
  cfg.validate();
  ResultTable table;
  PlotSpec plot;
  switch (cfg.experiment) {
    case Experiment::spectrum:
      table = spectrum_table(cfg);
      plot = PlotSpec{"ng", {}, false, false, "Cooper-pair box spectrum",
                      "N_g", "E/h (Hz)"};
      for (int k = 0; k < cfg.spectrum.levels; ++k)
        plot.y_columns.push_back("e" + std::to_string(k));
      break;
    case Experiment::one_tone: {
      table = one_tone_table(cfg);
      plot = PlotSpec{"f", {"s21"}, false, false,
                      "One-tone |S21| at central gate charge", "f (Hz)", "|S21|"};
      break;
    }
    case Experiment::two_tone:
      table = two_tone_table(cfg);
      plot = PlotSpec{"p_pump", {"delta_f_sq"}, false, false,
                      "Squared linewidth vs pump power", "P_pump (W)",
                      "(delta f)^2 (Hz^2)"};
      break;
    case Experiment::otto_sweep:
      table = otto_sweep_table(cfg);
      plot = PlotSpec{"f_drive", {"q_dot_cold", "q_dot_hot"}, true, false,
                      "Otto refrigerator cooling power", "f_drive (Hz)",
                      "heat current (W)"};
      break;
    case Experiment::filter:
      table = filter_table(cfg);
      plot = PlotSpec{"f", {"s21_db"}, false, false, "LCL filter transmission",
                      "f (Hz)", "|S21| (dB)"};
      break;
  }

  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  const std::string stem =
      to_string(cfg.experiment) + "_" + config_hash(cfg);
  const fs::path csv_path = fs::path(cfg.output_dir) / (stem + ".csv");
  const fs::path svg_path = fs::path(cfg.output_dir) / (stem + ".svg");

  std::ofstream(csv_path) << to_csv(table);

  // The one-tone map is written as a long-format CSV; the SVG shows the
  // central gate-charge trace.
  ResultTable plot_table = table;
  if (cfg.experiment == Experiment::one_tone) {
    const int ngc = table.column_index("ng");
    double mid = 0.5 * (cfg.one_tone.ng_min + cfg.one_tone.ng_max);
    double best = 1e300;
    for (const auto& row : table.rows)
      if (std::abs(row[ngc] - mid) < best) best = std::abs(row[ngc] - mid);
    plot_table.rows.clear();
    for (const auto& row : table.rows)
      if (std::abs(row[ngc] - mid) == best) plot_table.rows.push_back(row);
  }
  std::ofstream(svg_path) << render_line_plot(plot_table, plot);

  ExperimentOutput out;
  out.files = {csv_path.string(), svg_path.string()};
  out.table = std::move(table);
  return out;
}

}  // namespace cpb
