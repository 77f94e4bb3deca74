// fluxsize: effective superposition size of flux-qubit current states from
// BCS microscopics.  Subcommands: compute, table, spectrum, distinguish,
// verify.  Exit codes: 0 ok, 1 input error, 2 verification failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fluxsize/device_io.hpp"
#include "fluxsize/distinguish.hpp"
#include "fluxsize/errors.hpp"
#include "fluxsize/verify.hpp"

namespace {

using nlohmann::json;

int cmd_compute(const std::string& device_path, const fluxsize::RunConfig& config,
                const std::string& format) {
  const auto device = fluxsize::load_device(device_path);
  const auto report = fluxsize::run_pipeline(device, config);
  if (format == "csv") {
    std::cout << fluxsize::report_csv_header() << '\n'
              << fluxsize::report_csv_row(report) << '\n';
  } else {
    std::cout << fluxsize::report_to_json(report).dump(2) << '\n';
  }
  return 0;
}

int cmd_table(const std::string& devices_dir, const fluxsize::RunConfig& config,
              const std::string& format) {
  const auto files = fluxsize::list_device_files(devices_dir);
  if (files.empty()) throw fluxsize::ConfigError("no .json device files in " + devices_dir);
  std::vector<fluxsize::SizeReport> reports;
  for (const auto& f : files)
    reports.push_back(fluxsize::run_pipeline(fluxsize::load_device(f), config));
  if (format == "csv") {
    std::cout << fluxsize::report_csv_header() << '\n';
    for (const auto& r : reports) std::cout << fluxsize::report_csv_row(r) << '\n';
  } else {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(fluxsize::report_to_json(r));
    std::cout << arr.dump(2) << '\n';
  }
  return 0;
}

int cmd_spectrum(const std::string& material_arg, double delta_vs,
                 const fluxsize::RunConfig& config, const std::string& format) {
  fluxsize::Material mat;
  if (fluxsize::has_builtin_material(material_arg))
    mat = fluxsize::builtin_material(material_arg);
  else
    mat = fluxsize::load_material_file(material_arg);
  const auto rows = fluxsize::emit_spectrum(mat, delta_vs, config);
  if (format == "csv")
    std::cout << fluxsize::spectrum_csv(rows);
  else
    std::cout << fluxsize::spectrum_json(rows).dump(2) << '\n';
  return 0;
}

int cmd_distinguish(const std::string& ensemble_path, double n_modes, double delta_n_tot,
                    double delta) {
  if (!ensemble_path.empty()) {
    std::ifstream in(ensemble_path);
    if (!in) throw fluxsize::ConfigError("cannot open ensemble file: " + ensemble_path);
    const json j = json::parse(in, nullptr, true, true);
    if (!j.contains("occupations_A") || !j.contains("occupations_B"))
      throw fluxsize::ConfigError("ensemble file needs occupations_A and occupations_B arrays");
    const auto spec = fluxsize::ModeEnsembleSpec::explicit_modes(
        j.at("occupations_A").get<std::vector<double>>(),
        j.at("occupations_B").get<std::vector<double>>(), delta);
    std::vector<int> selection(spec.occupations_a.size());
    for (std::size_t i = 0; i < selection.size(); ++i) selection[i] = static_cast<int>(i);
    std::vector<double> deltas(selection.size());
    for (std::size_t i = 0; i < selection.size(); ++i)
      deltas[i] = spec.occupations_a[i] - spec.occupations_b[i];
    const auto lin = fluxsize::p_n_linearized(deltas);
    json out;
    out["n_modes"] = spec.total_modes;
    out["delta_n_tot"] = spec.delta_n_tot;
    out["p_linearized"] = lin.value;
    out["p_linearized_saturated"] = lin.saturated;
    out["p_exact"] = fluxsize::exact_trace_distance_oracle(spec, selection);
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  const auto spec = fluxsize::ModeEnsembleSpec::summary(n_modes, delta_n_tot, delta);
  const auto est = fluxsize::n_min_and_size(spec);
  json out;
  out["n_modes"] = n_modes;
  out["delta_n_tot"] = delta_n_tot;
  out["precision_delta"] = delta;
  out["n_min"] = est.n_min;
  out["effective_size"] = est.size;
  out["size_upper_bound_delta_N_tot"] = delta_n_tot;
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_verify(const std::string& devices_dir, bool quick) {
  fluxsize::VerifyConfig config;
  config.devices_dir = devices_dir;
  config.quick = quick;
  const auto results = fluxsize::run_verification(config);
  int failures = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
    if (!r.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all checks passed\n"
                              : std::to_string(failures) + " check(s) failed\n");
  return failures == 0 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"flux-qubit superposition size calculator"};
  app.require_subcommand(1);

  fluxsize::RunConfig config;
  std::string format = "json";

  auto* compute = app.add_subcommand("compute", "size report for one device file");
  std::string device_path;
  compute->add_option("--device", device_path, "device JSON file")->required();
  compute->add_option("--delta", config.precision_delta, "branch-inference precision in (0, 0.5)");
  compute->add_option("--n-modes", config.n_modes_total, "total mode count N for n_min");
  compute->add_option("--out", format, "json|csv");

  auto* table = app.add_subcommand("table", "size reports for every device in a directory");
  std::string devices_dir = fluxsize::default_data_dir() + "/devices";
  table->add_option("--devices", devices_dir, "directory of device JSON files");
  table->add_option("--delta", config.precision_delta, "branch-inference precision");
  table->add_option("--n-modes", config.n_modes_total, "total mode count N for n_min");
  std::string table_format = "csv";
  table->add_option("--out", table_format, "csv|json");

  auto* spectrum = app.add_subcommand("spectrum", "delta n over the Fermi shell");
  std::string material_arg;
  double delta_vs = 0.0;
  spectrum->add_option("--material", material_arg, "builtin name (Al, Nb) or material JSON file")
      ->required();
  spectrum->add_option("--delta-vs", delta_vs, "branch velocity difference, m/s")->required();
  spectrum->add_option("--nodes-e", config.spectrum_n_energy, "energy nodes (odd includes E=0)");
  spectrum->add_option("--nodes-angle", config.spectrum_n_angle, "cos(theta) nodes");
  spectrum->add_option("--window", config.spectrum_window_delta, "energy window, units of Delta");
  std::string spectrum_format = "csv";
  spectrum->add_option("--out", spectrum_format, "csv|json");

  auto* distinguish = app.add_subcommand("distinguish", "branch-distinguishability measures");
  std::string ensemble_path;
  double n_modes = 0.0, delta_n_tot = 0.0;
  distinguish->add_option("--ensemble", ensemble_path,
                          "explicit ensemble JSON ({occupations_A, occupations_B})");
  distinguish->add_option("--n-modes", n_modes, "total modes N (summary form)");
  distinguish->add_option("--delta-n-tot", delta_n_tot, "total occupation difference (summary form)");
  double dist_delta = 0.1;
  distinguish->add_option("--delta", dist_delta, "precision in (0, 0.5)");

  auto* verify = app.add_subcommand("verify", "run the numerical verification suite");
  std::string verify_devices;
  bool quick = false;
  verify->add_option("--devices", verify_devices, "device directory (default: bundled)");
  verify->add_flag("--quick", quick, "smaller Monte Carlo counts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed()) return cmd_compute(device_path, config, format);
    if (table->parsed()) return cmd_table(devices_dir, config, table_format);
    if (spectrum->parsed()) return cmd_spectrum(material_arg, delta_vs, config, spectrum_format);
    if (distinguish->parsed()) {
      if (ensemble_path.empty() && !(n_modes > 0.0))
        throw fluxsize::ConfigError("distinguish: give --ensemble or --n-modes/--delta-n-tot");
      return cmd_distinguish(ensemble_path, n_modes, delta_n_tot, dist_delta);
    }
    if (verify->parsed()) return cmd_verify(verify_devices, quick);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
