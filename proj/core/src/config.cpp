#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "cpb/cli_io.hpp"

namespace cpb {

using json = nlohmann::json;

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::spectrum: return "spectrum";
    case Experiment::one_tone: return "one_tone";
    case Experiment::two_tone: return "two_tone";
    case Experiment::otto_sweep: return "otto_sweep";
    case Experiment::filter: return "filter";
  }
  return "?";
}

Experiment experiment_from_string(const std::string& s) {
  if (s == "spectrum") return Experiment::spectrum;
  if (s == "one_tone") return Experiment::one_tone;
  if (s == "two_tone") return Experiment::two_tone;
  if (s == "otto_sweep") return Experiment::otto_sweep;
  if (s == "filter") return Experiment::filter;
  throw ParseError("unknown experiment '" + s + "'");
}

namespace {

const std::map<std::string, std::pair<std::string, double>>& unit_table() {
  static const std::map<std::string, std::pair<std::string, double>> table = {
      {"Hz", {"Hz", 1.0}},   {"kHz", {"Hz", 1e3}},  {"MHz", {"Hz", 1e6}},
      {"GHz", {"Hz", 1e9}},  {"K", {"K", 1.0}},     {"mK", {"K", 1e-3}},
      {"F", {"F", 1.0}},     {"nF", {"F", 1e-9}},   {"pF", {"F", 1e-12}},
      {"fF", {"F", 1e-15}},  {"aF", {"F", 1e-18}},  {"H", {"H", 1.0}},
      {"uH", {"H", 1e-6}},   {"nH", {"H", 1e-9}},   {"pH", {"H", 1e-12}},
      {"Ohm", {"Ohm", 1.0}}, {"W", {"W", 1.0}},     {"mW", {"W", 1e-3}},
      {"uW", {"W", 1e-6}},   {"nW", {"W", 1e-9}},   {"pW", {"W", 1e-12}},
      {"fW", {"W", 1e-15}},  {"aW", {"W", 1e-18}},  {"s", {"s", 1.0}},
      {"ms", {"s", 1e-3}},   {"us", {"s", 1e-6}},   {"ns", {"s", 1e-9}},
  };
  return table;
}

}  // namespace

double parse_quantity(const std::string& text, const std::string& dimension) {
  const size_t space = text.find_last_of(" \t");
  if (space == std::string::npos)
    throw ParseError("quantity '" + text + "' is missing a unit suffix (" +
                     dimension + ")");
  const std::string number = text.substr(0, space);
  const std::string unit = text.substr(space + 1);
  const auto it = unit_table().find(unit);
  if (it == unit_table().end())
    throw ParseError("unknown unit '" + unit + "' in '" + text + "'");
  if (it->second.first != dimension)
    throw ParseError("unit '" + unit + "' has dimension " + it->second.first +
                     ", expected " + dimension + " in '" + text + "'");
  try {
    size_t pos = 0;
    const double v = std::stod(number, &pos);
    if (pos != number.size()) throw std::invalid_argument(number);
    return v * it->second.second;
  } catch (const std::exception&) {
    throw ParseError("cannot parse number in quantity '" + text + "'");
  }
}

namespace {

// Strict accessor: every touched key is recorded and leftovers are rejected.
class Block {
 public:
  Block(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object())
      throw ParseError("expected an object at " + path_);
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  double quantity(const std::string& key, const std::string& dim, double dflt) {
    if (!mark(key)) return dflt;
    const json& v = j_.at(key);
    if (!v.is_string())
      throw ParseError(path_ + "." + key +
                       ": dimensioned quantities must be strings with a unit");
    return parse_quantity(v.get<std::string>(), dim);
  }

  double number(const std::string& key, double dflt) {
    if (!mark(key)) return dflt;
    const json& v = j_.at(key);
    if (!v.is_number())
      throw ParseError(path_ + "." + key + ": expected a plain number");
    return v.get<double>();
  }

  long integer(const std::string& key, long dflt) {
    if (!mark(key)) return dflt;
    const json& v = j_.at(key);
    if (!v.is_number_integer())
      throw ParseError(path_ + "." + key + ": expected an integer");
    return v.get<long>();
  }

  std::string text(const std::string& key, const std::string& dflt) {
    if (!mark(key)) return dflt;
    const json& v = j_.at(key);
    if (!v.is_string())
      throw ParseError(path_ + "." + key + ": expected a string");
    return v.get<std::string>();
  }

  Block child(const std::string& key) {
    mark(key);
    return Block(j_.at(key), path_ + "." + key);
  }

  void finish() const {
    for (const auto& item : j_.items())
      if (!used_.count(item.key()))
        throw ParseError("unknown key '" + path_ + "." + item.key() + "'");
  }

 private:
  bool mark(const std::string& key) {
    if (!j_.contains(key)) return false;
    used_.insert(key);
    return true;
  }

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

ResonatorParams parse_resonator(Block& b, const ResonatorParams& dflt) {
  ResonatorParams r = dflt;
  r.f_r = b.quantity("f", "Hz", dflt.f_r);
  r.q_total = b.number("q", dflt.q_total);
  r.g0_over_2pi = b.quantity("g0", "Hz", dflt.g0_over_2pi);
  r.n_fock = (int)b.integer("n_fock", dflt.n_fock);
  return r;
}

}  // namespace

RunConfig default_config() {
  RunConfig cfg;
  cfg.res_cold = ResonatorParams{4.718e9, 1e4, 140e6, 5, ResonatorRole::cold};
  cfg.res_hot = ResonatorParams{8.001e9, 1e4, 250e6, 5, ResonatorRole::hot};
  cfg.drive.f_drive = 10e6;
  cfg.drive.a = 2.0;
  cfg.drive.samples_per_period = 256;
  cfg.drive.ng_c =
      gate_charge_for_frequency(cfg.qubit, cfg.res_cold.f_r, NgBranch::below_half).ng;
  cfg.drive.ng_h =
      gate_charge_for_frequency(cfg.qubit, cfg.res_hot.f_r, NgBranch::below_half).ng;
  return cfg;
}

EngineConfig RunConfig::engine() const {
  EngineConfig e;
  e.qubit = qubit;
  e.drive = drive;
  if (e.drive.ng_c == 0.0 && e.drive.ng_h == 0.0) {
    e.drive.ng_c = gate_charge_for_frequency(qubit, res_cold.f_r,
                                             NgBranch::below_half).ng;
    e.drive.ng_h = gate_charge_for_frequency(qubit, res_hot.f_r,
                                             NgBranch::below_half).ng;
  }
  e.cold.temperature = t_cold;
  e.cold.resonator =
      ResonatorParams{res_cold.f_r, q_bath_cold, g_eff_cold, 5, ResonatorRole::cold};
  e.cold.g_eff_scale = poison_cold;
  e.hot.temperature = t_hot;
  e.hot.resonator =
      ResonatorParams{res_hot.f_r, q_bath_hot, g_eff_hot, 5, ResonatorRole::hot};
  e.hot.g_eff_scale = poison_hot;
  return e;
}

void RunConfig::validate() const {
  qubit.validate();
  res_cold.validate();
  res_hot.validate();
  drive.validate();
  if (t_cold <= 0 || t_hot <= 0)
    throw ValidationError("baths: temperatures must be positive");
  if (q_bath_cold <= 0 || q_bath_hot <= 0)
    throw ValidationError("baths: quality factors must be positive");
  if (poison_cold <= 0 || poison_cold > 1 || poison_hot <= 0 || poison_hot > 1)
    throw ValidationError("baths: poisoning factors must be in (0, 1]");
  if (g_eff_cold <= 0 || g_eff_hot <= 0)
    throw ValidationError("resonators: effective couplings must be positive");
  if (one_tone.p_even < 0 || one_tone.p_even > 1)
    throw ValidationError("one_tone: p_even must be in [0, 1]");
  if (two_tone.gamma2_over_2pi < 0.5 * two_tone.gamma1_over_2pi)
    throw ValidationError("two_tone: Gamma_2 >= Gamma_1/2 violated");
  if (two_tone.noise_frac < 0 || two_tone.n_powers < 3)
    throw ValidationError("two_tone: need noise_frac >= 0 and >= 3 powers");
  if (otto_sweep.f_min <= 0 || otto_sweep.f_max <= otto_sweep.f_min ||
      otto_sweep.points < 2)
    throw ValidationError("otto_sweep: invalid frequency grid");
  filter.filter.validate();
  if (filter.f_min <= 0 || filter.f_max <= filter.f_min || filter.points < 2)
    throw ValidationError("filter: invalid frequency grid");
  if (spectrum.levels < 1 || spectrum.ng_points < 2)
    throw ValidationError("spectrum: invalid grid");
  if (threads < 1) throw ValidationError("threads must be >= 1");
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }

  RunConfig cfg = default_config();
  Block root(j, "config");

  cfg.experiment =
      experiment_from_string(root.text("experiment", to_string(cfg.experiment)));
  cfg.output_dir = root.text("output_dir", cfg.output_dir);
  cfg.seed = (std::uint64_t)root.integer("seed", (long)cfg.seed);
  cfg.threads = (int)root.integer("threads", cfg.threads);

  if (root.has("qubit")) {
    Block b = root.child("qubit");
    cfg.qubit.ec_over_h = b.quantity("ec", "Hz", cfg.qubit.ec_over_h);
    cfg.qubit.ej_over_h = b.quantity("ej", "Hz", cfg.qubit.ej_over_h);
    cfg.qubit.n_charge_min =
        (int)b.integer("n_charge_min", cfg.qubit.n_charge_min);
    cfg.qubit.n_charge_max =
        (int)b.integer("n_charge_max", cfg.qubit.n_charge_max);
    b.finish();
  }
  if (root.has("resonators")) {
    Block b = root.child("resonators");
    if (b.has("cold")) {
      Block c = b.child("cold");
      cfg.res_cold = parse_resonator(c, cfg.res_cold);
      cfg.g_eff_cold = c.quantity("g_eff", "Hz", cfg.g_eff_cold);
      c.finish();
    }
    if (b.has("hot")) {
      Block h = b.child("hot");
      cfg.res_hot = parse_resonator(h, cfg.res_hot);
      cfg.g_eff_hot = h.quantity("g_eff", "Hz", cfg.g_eff_hot);
      h.finish();
    }
    cfg.g_tilde = b.quantity("g_tilde", "Hz", cfg.g_tilde);
    b.finish();
  }
  if (root.has("baths")) {
    Block b = root.child("baths");
    cfg.t_cold = b.quantity("t_cold", "K", cfg.t_cold);
    cfg.t_hot = b.quantity("t_hot", "K", cfg.t_hot);
    cfg.q_bath_cold = b.number("q_cold", cfg.q_bath_cold);
    cfg.q_bath_hot = b.number("q_hot", cfg.q_bath_hot);
    cfg.poison_cold = b.number("poison_cold", cfg.poison_cold);
    cfg.poison_hot = b.number("poison_hot", cfg.poison_hot);
    b.finish();
  }
  if (root.has("drive")) {
    Block b = root.child("drive");
    cfg.drive.f_drive = b.quantity("f_drive", "Hz", cfg.drive.f_drive);
    cfg.drive.a = b.number("a", cfg.drive.a);
    cfg.drive.samples_per_period =
        (int)b.integer("samples_per_period", cfg.drive.samples_per_period);
    cfg.drive.ng_c = b.number("ng_cold", cfg.drive.ng_c);
    cfg.drive.ng_h = b.number("ng_hot", cfg.drive.ng_h);
    b.finish();
  }
  if (root.has("spectrum")) {
    Block b = root.child("spectrum");
    cfg.spectrum.levels = (int)b.integer("levels", cfg.spectrum.levels);
    cfg.spectrum.ng_points = (int)b.integer("ng_points", cfg.spectrum.ng_points);
    cfg.spectrum.ng_min = b.number("ng_min", cfg.spectrum.ng_min);
    cfg.spectrum.ng_max = b.number("ng_max", cfg.spectrum.ng_max);
    b.finish();
  }
  if (root.has("one_tone")) {
    Block b = root.child("one_tone");
    cfg.one_tone.ng_points = (int)b.integer("ng_points", cfg.one_tone.ng_points);
    cfg.one_tone.ng_min = b.number("ng_min", cfg.one_tone.ng_min);
    cfg.one_tone.ng_max = b.number("ng_max", cfg.one_tone.ng_max);
    cfg.one_tone.f_points = (int)b.integer("f_points", cfg.one_tone.f_points);
    cfg.one_tone.f_margin = b.quantity("f_margin", "Hz", cfg.one_tone.f_margin);
    cfg.one_tone.q_loaded = b.number("q_loaded", cfg.one_tone.q_loaded);
    cfg.one_tone.q_coupling = b.number("q_coupling", cfg.one_tone.q_coupling);
    cfg.one_tone.p_even = b.number("p_even", cfg.one_tone.p_even);
    b.finish();
  }
  if (root.has("two_tone")) {
    Block b = root.child("two_tone");
    cfg.two_tone.gamma1_over_2pi =
        b.quantity("gamma1", "Hz", cfg.two_tone.gamma1_over_2pi);
    cfg.two_tone.gamma2_over_2pi =
        b.quantity("gamma2", "Hz", cfg.two_tone.gamma2_over_2pi);
    cfg.two_tone.n_powers = (int)b.integer("n_powers", cfg.two_tone.n_powers);
    cfg.two_tone.p_max = b.quantity("p_max", "W", cfg.two_tone.p_max);
    cfg.two_tone.pump_photon_scale =
        b.number("pump_photon_scale", cfg.two_tone.pump_photon_scale);
    cfg.two_tone.noise_frac = b.number("noise_frac", cfg.two_tone.noise_frac);
    b.finish();
  }
  if (root.has("otto_sweep")) {
    Block b = root.child("otto_sweep");
    cfg.otto_sweep.f_min = b.quantity("f_min", "Hz", cfg.otto_sweep.f_min);
    cfg.otto_sweep.f_max = b.quantity("f_max", "Hz", cfg.otto_sweep.f_max);
    cfg.otto_sweep.points = (int)b.integer("points", cfg.otto_sweep.points);
    b.finish();
  }
  if (root.has("filter")) {
    Block b = root.child("filter");
    cfg.filter.filter.inductance =
        b.quantity("l", "H", cfg.filter.filter.inductance);
    cfg.filter.filter.capacitance =
        b.quantity("c", "F", cfg.filter.filter.capacitance);
    cfg.filter.filter.z0 = b.quantity("z0", "Ohm", cfg.filter.filter.z0);
    cfg.filter.f_min = b.quantity("f_min", "Hz", cfg.filter.f_min);
    cfg.filter.f_max = b.quantity("f_max", "Hz", cfg.filter.f_max);
    cfg.filter.points = (int)b.integer("points", cfg.filter.points);
    b.finish();
  }
  root.finish();

  cfg.validate();
  return cfg;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quantity_str(double v, const char* unit) {
  return fmt(v) + " " + unit;
}

}  // namespace

std::string serialize_config(const RunConfig& cfg) {
  json j;
  j["experiment"] = to_string(cfg.experiment);
  j["output_dir"] = cfg.output_dir;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["qubit"] = {{"ec", quantity_str(cfg.qubit.ec_over_h, "Hz")},
                {"ej", quantity_str(cfg.qubit.ej_over_h, "Hz")},
                {"n_charge_min", cfg.qubit.n_charge_min},
                {"n_charge_max", cfg.qubit.n_charge_max}};
  auto res_json = [](const ResonatorParams& r, double g_eff) {
    return json{{"f", quantity_str(r.f_r, "Hz")},
                {"q", r.q_total},
                {"g0", quantity_str(r.g0_over_2pi, "Hz")},
                {"g_eff", quantity_str(g_eff, "Hz")},
                {"n_fock", r.n_fock}};
  };
  j["resonators"] = {{"cold", res_json(cfg.res_cold, cfg.g_eff_cold)},
                     {"hot", res_json(cfg.res_hot, cfg.g_eff_hot)},
                     {"g_tilde", quantity_str(cfg.g_tilde, "Hz")}};
  j["baths"] = {{"t_cold", quantity_str(cfg.t_cold, "K")},
                {"t_hot", quantity_str(cfg.t_hot, "K")},
                {"q_cold", cfg.q_bath_cold},
                {"q_hot", cfg.q_bath_hot},
                {"poison_cold", cfg.poison_cold},
                {"poison_hot", cfg.poison_hot}};
  j["drive"] = {{"f_drive", quantity_str(cfg.drive.f_drive, "Hz")},
                {"a", cfg.drive.a},
                {"samples_per_period", cfg.drive.samples_per_period},
                {"ng_cold", cfg.drive.ng_c},
                {"ng_hot", cfg.drive.ng_h}};
  j["spectrum"] = {{"levels", cfg.spectrum.levels},
                   {"ng_points", cfg.spectrum.ng_points},
                   {"ng_min", cfg.spectrum.ng_min},
                   {"ng_max", cfg.spectrum.ng_max}};
  j["one_tone"] = {{"ng_points", cfg.one_tone.ng_points},
                   {"ng_min", cfg.one_tone.ng_min},
                   {"ng_max", cfg.one_tone.ng_max},
                   {"f_points", cfg.one_tone.f_points},
                   {"f_margin", quantity_str(cfg.one_tone.f_margin, "Hz")},
                   {"q_loaded", cfg.one_tone.q_loaded},
                   {"q_coupling", cfg.one_tone.q_coupling},
                   {"p_even", cfg.one_tone.p_even}};
  j["two_tone"] = {
      {"gamma1", quantity_str(cfg.two_tone.gamma1_over_2pi, "Hz")},
      {"gamma2", quantity_str(cfg.two_tone.gamma2_over_2pi, "Hz")},
      {"n_powers", cfg.two_tone.n_powers},
      {"p_max", quantity_str(cfg.two_tone.p_max, "W")},
      {"pump_photon_scale", cfg.two_tone.pump_photon_scale},
      {"noise_frac", cfg.two_tone.noise_frac}};
  j["otto_sweep"] = {{"f_min", quantity_str(cfg.otto_sweep.f_min, "Hz")},
                     {"f_max", quantity_str(cfg.otto_sweep.f_max, "Hz")},
                     {"points", cfg.otto_sweep.points}};
  j["filter"] = {{"l", quantity_str(cfg.filter.filter.inductance, "H")},
                 {"c", quantity_str(cfg.filter.filter.capacitance, "F")},
                 {"z0", quantity_str(cfg.filter.filter.z0, "Ohm")},
                 {"f_min", quantity_str(cfg.filter.f_min, "Hz")},
                 {"f_max", quantity_str(cfg.filter.f_max, "Hz")},
                 {"points", cfg.filter.points}};
  return j.dump(2);
}

std::string config_hash(const RunConfig& cfg) {
  const std::string s = serialize_config(cfg);
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace cpb
