#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpb/drive_protocol.hpp"
#include "cpb/errors.hpp"
#include "cpb/microwave_filter.hpp"
#include "cpb/otto_engine.hpp"
#include "cpb/qubit_model.hpp"

namespace cpb {

enum class Experiment { spectrum, one_tone, two_tone, otto_sweep, filter };

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& s);

struct SpectrumBlock {
  int levels = 3;
  int ng_points = 201;
  double ng_min = 0.0;
  double ng_max = 1.0;
};

struct OneToneBlock {
  int ng_points = 101;
  double ng_min = 0.25;
  double ng_max = 0.75;
  int f_points = 161;
  double f_margin = 0.4e9;     // Hz, window half-width around each resonator
  double q_loaded = 2000.0;    // notch rendering quality factors
  double q_coupling = 3000.0;
  double p_even = 1.0;         // parity mixing weight; 1 = no poisoning
};

struct TwoToneBlock {
  double gamma1_over_2pi = 20e6;  // Hz
  double gamma2_over_2pi = 24e6;  // Hz
  int n_powers = 5;
  double p_max = 1e-12;           // W
  double pump_photon_scale = 1e10;  // photons per watt
  double noise_frac = 0.01;
};

struct OttoSweepBlock {
  double f_min = 1e6;    // Hz
  double f_max = 2.3e9;  // Hz, the gate-filter cutoff
  int points = 60;
};

struct FilterBlock {
  LCLFilter filter;
  double f_min = 0.1e9;
  double f_max = 14e9;
  int points = 500;
};

/// Full run configuration; defaults reproduce the measured device parameters.
struct RunConfig {
  Experiment experiment = Experiment::otto_sweep;
  std::string output_dir = ".";
  std::uint64_t seed = 1;
  int threads = 1;

  QubitParams qubit;
  ResonatorParams res_cold;   // f_c, Q, bare coupling for spectra
  ResonatorParams res_hot;
  double g_eff_cold = 76e6;   // degeneracy-extracted couplings fed to rates
  double g_eff_hot = 125e6;
  double g_tilde = 0.0;

  double t_cold = 0.3;        // K
  double t_hot = 0.3;
  double q_bath_cold = 2.0;   // resonator Q in refrigerator operation
  double q_bath_hot = 2.0;
  double poison_cold = 1.0;   // g_eff_scale factors
  double poison_hot = 1.0;

  DriveProtocol drive;

  SpectrumBlock spectrum;
  OneToneBlock one_tone;
  TwoToneBlock two_tone;
  OttoSweepBlock otto_sweep;
  FilterBlock filter;

  /// Engine view of the configuration (endpoints solved from resonator
  /// frequencies when the drive endpoints are left at zero).
  EngineConfig engine() const;

  void validate() const;
};

RunConfig default_config();

/// Strict parse: unknown keys rejected, unit suffixes required on all
/// dimensioned quantities. Throws ParseError / ValidationError.
RunConfig parse_config(const std::string& text);

/// Canonical serialization; parse(serialize(cfg)) == cfg.
std::string serialize_config(const RunConfig& cfg);

/// FNV-1a hash of the canonical serialization, hex string.
std::string config_hash(const RunConfig& cfg);

/// Parse "6.8 GHz"-style quantity to SI base units.
double parse_quantity(const std::string& text, const std::string& dimension);

/// Numeric table with a units header row and a provenance footer.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::string> units;  // one per column
  std::vector<std::vector<double>> rows;
  std::string provenance;          // config hash + artifact version

  int column_index(const std::string& name) const;  // throws ColumnMissing
  void add_row(std::vector<double> row);
};

std::string to_csv(const ResultTable& table);

struct PlotSpec {
  std::string x_column;
  std::vector<std::string> y_columns;
  bool log_x = false;
  bool log_y = false;
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 860;
  int height = 520;
};

/// Standalone SVG 1.1 document; byte-stable for identical inputs.
std::string render_line_plot(const ResultTable& table, const PlotSpec& spec);

}  // namespace cpb
