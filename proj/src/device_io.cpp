#include "fluxsize/device_io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fluxsize/bcs_core.hpp"
#include "fluxsize/constants.hpp"
#include "fluxsize/distinguish.hpp"
#include "fluxsize/errors.hpp"
#include "fluxsize/quadrature.hpp"

namespace fluxsize {

using nlohmann::json;

void RunConfig::validate() const {
  if (!(precision_delta > 0.0 && precision_delta < 0.5))
    throw ConfigError("run config: precision delta must lie in (0, 1/2)");
  if (!(n_modes_total >= 1.0))
    throw ConfigError("run config: n_modes_total must be >= 1");
  if (spectrum_n_energy < 8 || spectrum_n_angle < 8)
    throw ConfigError("run config: node counts must be >= 8");
  if (!(spectrum_window_delta >= 10.0))
    throw ConfigError("run config: energy window must be >= 10 Delta");
}

namespace {

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  try {
    return json::parse(in, nullptr, /*allow_exceptions=*/true, /*ignore_comments=*/true);
  } catch (const json::parse_error& err) {
    throw ConfigError("parse error in " + path + ": " + err.what());
  }
}

double require_number(const json& j, const std::string& field, const std::string& where) {
  if (!j.contains(field))
    throw ConfigError(where + ": missing field '" + field + "'");
  if (!j.at(field).is_number())
    throw ConfigError(where + ": field '" + field + "' must be a number");
  return j.at(field).get<double>();
}

std::optional<double> optional_number(const json& j, const std::string& field,
                                      const std::string& where) {
  if (!j.contains(field)) return std::nullopt;
  if (!j.at(field).is_number())
    throw ConfigError(where + ": field '" + field + "' must be a number");
  return j.at(field).get<double>();
}

} // namespace

Material material_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("material: object expected");
  const std::string where = "material '" + j.value("name", std::string("?")) + "'";
  MaterialParams p;
  if (!j.contains("name") || !j.at("name").is_string())
    throw ConfigError("material: string field 'name' required");
  p.name = j.at("name").get<std::string>();
  p.fermi_velocity = require_number(j, "fermi_velocity_m_per_s", where);
  p.gap = optional_number(j, "gap_joule", where);
  p.tc = optional_number(j, "tc_kelvin", where);
  p.debye_energy = optional_number(j, "debye_energy_joule", where);
  p.coupling = optional_number(j, "dimensionless_coupling", where);
  return make_material(p);
}

Material load_material_file(const std::string& path) {
  return material_from_json(parse_file(path));
}

Material resolve_material(const json& spec) {
  if (spec.is_string()) return builtin_material(spec.get<std::string>());
  if (spec.is_object()) return material_from_json(spec);
  throw ConfigError("device: 'material' must be a known name or an inline object");
}

namespace {

JunctionSpec junction_from_json(const json& j, const Material& mat, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": 'junction' must be an object");
  if (j.contains("calibrate_from")) {
    const json& c = j.at("calibrate_from");
    JunctionCalibration cal;
    cal.normal_state_resistance = require_number(c, "normal_state_resistance_ohm", where);
    if (c.contains("resistance_range_ohm")) {
      const json& r = c.at("resistance_range_ohm");
      if (!r.is_array() || r.size() != 2)
        throw ConfigError(where + ": resistance_range_ohm must be [lo, hi]");
      cal.resistance_lo = r.at(0).get<double>();
      cal.resistance_hi = r.at(1).get<double>();
    }
    cal.junction_area = require_number(c, "junction_area_m2", where);
    if (c.contains("energy_window_delta"))
      cal.energy_window_delta = c.at("energy_window_delta").get<double>();
    if (c.contains("phase_difference_rad"))
      cal.phase_difference = c.at("phase_difference_rad").get<double>();
    return calibrate_junction(cal, mat);
  }
  JunctionSpec spec;
  spec.t_amp = require_number(j, "t_amp_joule", where);
  spec.mode_count_near_junction = require_number(j, "mode_count_near_junction", where);
  if (j.contains("t_amp_range_joule")) {
    const json& r = j.at("t_amp_range_joule");
    if (!r.is_array() || r.size() != 2)
      throw ConfigError(where + ": t_amp_range_joule must be [lo, hi]");
    spec.t_amp_lo = r.at(0).get<double>();
    spec.t_amp_hi = r.at(1).get<double>();
  }
  if (j.contains("phase_difference_rad"))
    spec.phase_difference = j.at("phase_difference_rad").get<double>();
  if (j.contains("energy_window_delta"))
    spec.energy_window_delta = j.at("energy_window_delta").get<double>();
  if (j.contains("calibration_note") && j.at("calibration_note").is_string())
    spec.calibration_note = j.at("calibration_note").get<std::string>();
  if (spec.t_amp < 0.0 || spec.mode_count_near_junction <= 0.0)
    throw ConfigError(where + ": junction spec not calibrated (t_amp >= 0 and mode count > 0)");
  return spec;
}

} // namespace

DeviceSpec device_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("device: object expected");
  DeviceSpec dev;
  if (!j.contains("name") || !j.at("name").is_string())
    throw ConfigError("device: string field 'name' required");
  dev.name = j.at("name").get<std::string>();
  const std::string where = "device '" + dev.name + "'";

  if (!j.contains("material")) throw ConfigError(where + ": missing field 'material'");
  dev.material = resolve_material(j.at("material"));

  dev.loop_length = require_number(j, "loop_length_m", where);
  dev.enclosed_area = require_number(j, "enclosed_area_m2", where);

  const bool scalar_ip = j.contains("persistent_current_diff_A");
  const bool range_ip = j.contains("persistent_current_diff_A_range");
  if (scalar_ip == range_ip)
    throw ConfigError(where + ": exactly one of persistent_current_diff_A or "
                              "persistent_current_diff_A_range required");
  if (scalar_ip) {
    dev.delta_ip_lo = dev.delta_ip_hi = require_number(j, "persistent_current_diff_A", where);
  } else {
    const json& r = j.at("persistent_current_diff_A_range");
    if (!r.is_array() || r.size() != 2)
      throw ConfigError(where + ": persistent_current_diff_A_range must be [lo, hi]");
    dev.delta_ip_lo = r.at(0).get<double>();
    dev.delta_ip_hi = r.at(1).get<double>();
  }

  if (j.contains("junction")) dev.junction = junction_from_json(j.at("junction"), dev.material, where);

  validate_device(dev);
  return dev;
}

DeviceSpec load_device(const std::string& path) {
  return device_from_json(parse_file(path));
}

SizeReport run_pipeline(const DeviceSpec& dev, const RunConfig& config) {
  config.validate();
  validate_device(dev);

  SizeReport rep;
  rep.device_name = dev.name;
  rep.material_name = dev.material.name;
  rep.fermi_velocity = dev.material.fermi_velocity;
  rep.loop_length = dev.loop_length;
  rep.enclosed_area = dev.enclosed_area;
  rep.delta_ip = {dev.delta_ip_lo, dev.delta_ip_hi};

  rep.delta_n_bulk = total_mode_change(dev);
  rep.delta_n_reported = round_half_even(rep.delta_n_bulk.nominal());

  const auto mu_lo = magnetic_moment_difference(dev, dev.delta_ip_lo);
  const auto mu_hi = magnetic_moment_difference(dev, dev.delta_ip_hi);
  rep.delta_mu_j_per_t = {mu_lo.j_per_tesla, mu_hi.j_per_tesla};
  rep.delta_mu_bohr = {mu_lo.bohr_magnetons, mu_hi.bohr_magnetons};

  if (dev.junction) {
    rep.delta_n_tunnel = junction_total(*dev.junction, dev.material);
    rep.delta_n_combined = Interval{rep.delta_n_bulk.lo + rep.delta_n_tunnel->lo,
                                    rep.delta_n_bulk.hi + rep.delta_n_tunnel->hi};
    rep.combination_note =
        "bulk and tunneling contributions are not simply additive; the sum is a "
        "bound valid when tunneling is confined to the junction region";
  }

  rep.n_modes_total = config.n_modes_total;
  rep.precision_delta = config.precision_delta;
  const double dn_nominal = rep.delta_n_bulk.nominal();
  rep.size_upper_bound = dn_nominal;
  if (dn_nominal > 0.0) {
    const auto est = n_min_and_size(
        ModeEnsembleSpec::summary(config.n_modes_total, dn_nominal, config.precision_delta));
    if (est.n_min <= config.n_modes_total) {
      rep.n_min = est.n_min;
      rep.effective_size = est.size;
    } else {
      rep.note = "branches cannot be distinguished to the requested precision with the "
                 "configured mode count";
    }
  } else {
    rep.note = "branches indistinguishable: zero persistent-current difference gives "
               "DN_tot = 0";
  }
  return rep;
}

std::string render_number(double x) { return json(x).dump(); }

namespace {

json interval_to_json(const Interval& iv) { return json{{"lo", iv.lo}, {"hi", iv.hi}}; }

Interval interval_from_json(const json& j) {
  return {j.at("lo").get<double>(), j.at("hi").get<double>()};
}

} // namespace

json report_to_json(const SizeReport& rep) {
  json j;
  j["device"] = rep.device_name;
  j["material"] = rep.material_name;
  j["fermi_velocity_m_per_s"] = rep.fermi_velocity;
  j["loop_length_m"] = rep.loop_length;
  j["enclosed_area_m2"] = rep.enclosed_area;
  j["delta_Ip_A"] = interval_to_json(rep.delta_ip);
  j["delta_N_tot_raw"] = interval_to_json(rep.delta_n_bulk);
  j["delta_N_tot_reported"] = rep.delta_n_reported;
  j["delta_mu_J_per_T"] = interval_to_json(rep.delta_mu_j_per_t);
  j["delta_mu_muB"] = interval_to_json(rep.delta_mu_bohr);
  if (rep.delta_n_tunnel) {
    j["delta_N_tunnel"] = {{"value", rep.delta_n_tunnel->value},
                           {"lo", rep.delta_n_tunnel->lo},
                           {"hi", rep.delta_n_tunnel->hi}};
    j["delta_N_combined"] = interval_to_json(*rep.delta_n_combined);
    j["combination_note"] = rep.combination_note;
  }
  j["n_modes_total"] = rep.n_modes_total;
  j["precision_delta"] = rep.precision_delta;
  if (rep.n_min) j["n_min"] = *rep.n_min;
  if (rep.effective_size) j["effective_size"] = *rep.effective_size;
  j["size_upper_bound_delta_N_tot"] = rep.size_upper_bound;
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

SizeReport report_from_json(const json& j) {
  SizeReport rep;
  rep.device_name = j.at("device").get<std::string>();
  rep.material_name = j.at("material").get<std::string>();
  rep.fermi_velocity = j.at("fermi_velocity_m_per_s").get<double>();
  rep.loop_length = j.at("loop_length_m").get<double>();
  rep.enclosed_area = j.at("enclosed_area_m2").get<double>();
  rep.delta_ip = interval_from_json(j.at("delta_Ip_A"));
  rep.delta_n_bulk = interval_from_json(j.at("delta_N_tot_raw"));
  rep.delta_n_reported = j.at("delta_N_tot_reported").get<double>();
  rep.delta_mu_j_per_t = interval_from_json(j.at("delta_mu_J_per_T"));
  rep.delta_mu_bohr = interval_from_json(j.at("delta_mu_muB"));
  if (j.contains("delta_N_tunnel")) {
    JunctionTotal jt;
    jt.value = j.at("delta_N_tunnel").at("value").get<double>();
    jt.lo = j.at("delta_N_tunnel").at("lo").get<double>();
    jt.hi = j.at("delta_N_tunnel").at("hi").get<double>();
    rep.delta_n_tunnel = jt;
    rep.delta_n_combined = interval_from_json(j.at("delta_N_combined"));
    rep.combination_note = j.value("combination_note", std::string{});
  }
  rep.n_modes_total = j.at("n_modes_total").get<double>();
  rep.precision_delta = j.at("precision_delta").get<double>();
  if (j.contains("n_min")) rep.n_min = j.at("n_min").get<double>();
  if (j.contains("effective_size")) rep.effective_size = j.at("effective_size").get<double>();
  rep.size_upper_bound = j.at("size_upper_bound_delta_N_tot").get<double>();
  rep.note = j.value("note", std::string{});
  return rep;
}

std::string report_csv_header() {
  return "name,material,v_F_m_per_s,L_m,delta_Ip_A,delta_mu_muB,delta_N_tot,"
         "delta_N_tot_raw,delta_N_tot_lo,delta_N_tot_hi,delta_N_T,delta_N_T_lo,"
         "delta_N_T_hi,n_min,effective_size";
}

std::string report_csv_row(const SizeReport& rep) {
  std::ostringstream out;
  out << rep.device_name << ',' << rep.material_name << ','
      << render_number(rep.fermi_velocity) << ',' << render_number(rep.loop_length) << ','
      << render_number(rep.delta_ip.nominal()) << ','
      << render_number(rep.delta_mu_bohr.nominal()) << ','
      << render_number(rep.delta_n_reported) << ','
      << render_number(rep.delta_n_bulk.nominal()) << ','
      << render_number(rep.delta_n_bulk.lo) << ',' << render_number(rep.delta_n_bulk.hi) << ',';
  if (rep.delta_n_tunnel)
    out << render_number(rep.delta_n_tunnel->value) << ','
        << render_number(rep.delta_n_tunnel->lo) << ','
        << render_number(rep.delta_n_tunnel->hi) << ',';
  else
    out << ",,,";
  out << (rep.n_min ? render_number(*rep.n_min) : std::string{}) << ','
      << (rep.effective_size ? render_number(*rep.effective_size) : std::string{});
  return out.str();
}

std::vector<SpectrumRow> emit_spectrum(const Material& mat, double delta_vs,
                                       const RunConfig& config) {
  config.validate();
  if (!std::isfinite(delta_vs) || std::abs(delta_vs) >= 2.0 * critical_velocity(mat))
    throw PerturbationDomainError("emit_spectrum: |delta_vs| must be below 2 v_crit");

  const int ne = config.spectrum_n_energy;
  const int nc = config.spectrum_n_angle;
  const double w = config.spectrum_window_delta * mat.gap;
  const BranchPair branches{{0.0, 0.0, +0.5 * delta_vs}, {0.0, 0.0, -0.5 * delta_vs}};
  const double two_m_over_h2 = 2.0 * mat.electron_mass / (mat.hbar * mat.hbar);

  std::vector<SpectrumRow> rows;
  rows.reserve(static_cast<std::size_t>(ne) * static_cast<std::size_t>(nc));
  for (int i = 0; i < ne; ++i) {
    const double e = -w + 2.0 * w * i / (ne - 1);
    const double q = std::sqrt(two_m_over_h2 * (mat.chemical_potential + e));
    for (int jc = 0; jc < nc; ++jc) {
      const double c = -1.0 + 2.0 * jc / (nc - 1);
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      const Mode mode{{q * s, 0.0, q * c}};
      rows.push_back({e / mat.gap, c, occupation_difference(mode, branches, mat)});
    }
  }
  return rows;
}

std::string spectrum_csv(const std::vector<SpectrumRow>& rows) {
  std::ostringstream out;
  out << "E_over_Delta,cos_theta,delta_n\n";
  for (const auto& r : rows)
    out << render_number(r.e_over_delta) << ',' << render_number(r.cos_theta) << ','
        << render_number(r.delta_n) << '\n';
  return out.str();
}

json spectrum_json(const std::vector<SpectrumRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"E_over_Delta", r.e_over_delta},
                   {"cos_theta", r.cos_theta},
                   {"delta_n", r.delta_n}});
  return arr;
}

SpectrumConsistency spectrum_consistency(const Material& mat, double delta_vs,
                                         const RunConfig& config) {
  const auto rows = emit_spectrum(mat, delta_vs, config);
  const int ne = config.spectrum_n_energy;
  const int nc = config.spectrum_n_angle;
  const double w = config.spectrum_window_delta * mat.gap;
  const double he = 2.0 * w / (ne - 1);
  const double hc = 2.0 / (nc - 1);
  const double two_m_over_h2 = 2.0 * mat.electron_mass / (mat.hbar * mat.hbar);

  // trapezoid weights over the uniform grid; shell measure 2 pi q^2 rho_F dq
  // with dq = m dE / (hbar^2 q)
  std::vector<double> terms;
  terms.reserve(rows.size());
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    const auto& r = rows[idx];
    if (r.delta_n <= 0.0) continue;
    const int i = static_cast<int>(idx) / nc;
    const int jc = static_cast<int>(idx) % nc;
    const double we = (i == 0 || i == ne - 1) ? 0.5 * he : he;
    const double wc = (jc == 0 || jc == nc - 1) ? 0.5 * hc : hc;
    const double e = r.e_over_delta * mat.gap;
    const double q = std::sqrt(two_m_over_h2 * (mat.chemical_potential + e));
    const double measure = 2.0 * kPi * q * q * mat.dos_fermi * mat.electron_mass /
                           (mat.hbar * mat.hbar * q);
    terms.push_back(measure * r.delta_n * we * wc);
  }

  SpectrumConsistency out;
  out.positive_density = pairwise_sum(terms);
  out.from_current =
      local_mode_change_density(current_density_from_velocity(delta_vs, mat), mat);
  out.rel_error = std::abs(out.positive_density - out.from_current) / out.from_current;
  return out;
}

std::string default_data_dir() {
#ifdef FLUXSIZE_DATA_DIR
  return FLUXSIZE_DATA_DIR;
#else
  return "data";
#endif
}

std::vector<std::string> list_device_files(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  if (!fs::is_directory(dir)) throw ConfigError("device directory not found: " + dir);
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  return files;
}

} // namespace fluxsize
