#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fluxsize/material.hpp"
#include "fluxsize/sizecalc.hpp"

namespace fluxsize {

// Run-wide settings.  Node counts must be >= 8, energy windows >= 10 Delta,
// precision delta in (0, 1/2).
struct RunConfig {
  double precision_delta = 0.1;
  double n_modes_total = 1.0e6;

  // spectrum emission: uniform nodes so that E = 0 and cos(theta) = +-1,0
  // appear exactly as rows (odd counts)
  int spectrum_n_energy = 201;
  int spectrum_n_angle = 21;
  double spectrum_window_delta = 20.0;

  std::uint64_t seed = 20260809;

  void validate() const;
};

Material load_material_file(const std::string& path);
Material material_from_json(const nlohmann::json& j);
Material resolve_material(const nlohmann::json& spec);  // name string or inline object

DeviceSpec load_device(const std::string& path);
DeviceSpec device_from_json(const nlohmann::json& j);

// Composes the full pipeline: bulk mode change, magnetic moment, optional
// tunneling interval, and the distinguishability size at the configured
// precision.
SizeReport run_pipeline(const DeviceSpec& dev, const RunConfig& config);

nlohmann::json report_to_json(const SizeReport& report);
SizeReport report_from_json(const nlohmann::json& j);

std::string report_csv_header();
std::string report_csv_row(const SizeReport& report);

// One decimal rendering rule for every number in both emissions: shortest
// round-trip decimal (<= 17 significant digits), so CSV cells and JSON
// values are byte-identical and reload exactly.
std::string render_number(double x);

struct SpectrumRow {
  double e_over_delta = 0.0;
  double cos_theta = 0.0;
  double delta_n = 0.0;
};

std::vector<SpectrumRow> emit_spectrum(const Material& mat, double delta_vs,
                                       const RunConfig& config);

std::string spectrum_csv(const std::vector<SpectrumRow>& rows);
nlohmann::json spectrum_json(const std::vector<SpectrumRow>& rows);

// Integrates the positive-delta_n rows against the shell measure and
// compares with the local density implied by the equivalent current
// difference; both sides share the mode-density convention, so the ratio is
// convention-free.
struct SpectrumConsistency {
  double positive_density = 0.0;  // electrons per m^3 entering new modes
  double from_current = 0.0;      // 3 |dj| / (4 |e| v_F) with dj from K2
  double rel_error = 0.0;
};
SpectrumConsistency spectrum_consistency(const Material& mat, double delta_vs,
                                         const RunConfig& config);

// Bundled data locations (compiled-in defaults, overridable per call).
std::string default_data_dir();
std::vector<std::string> list_device_files(const std::string& dir);

} // namespace fluxsize
